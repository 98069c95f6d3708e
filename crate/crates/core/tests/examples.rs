macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run().unwrap();
        }
    };
}

example!(cartan_data, "cartan_data.rs");
example!(graded_dimensions, "graded_dimensions.rs");
example!(nilhecke, "nilhecke.rs");
example!(idempotents, "idempotents.rs");
example!(level_reduction, "level_reduction.rs");
example!(basis_index_sets, "basis_index_sets.rs");
example!(permutations, "permutations.rs");
example!(laurent_polynomials, "laurent_polynomials.rs");
example!(verification_battery, "verification_battery.rs");
