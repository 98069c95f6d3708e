// The verification battery over a single Cartan datum.

use klr::verify::{verify_suites, Battery, Suite};
use klr::{builtin_cartan, Weight};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let cartan = builtin_cartan("G2")?;
    let battery = Battery::single("G2", cartan, Weight::dominant_up_to_level(2, 2), 3);
    let report = verify_suites(&battery, &Suite::ALL, None)?;
    print!("{report}");
    assert!(report.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
