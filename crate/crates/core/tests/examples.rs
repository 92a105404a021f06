macro_rules! example_test {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example_test!(construct_starter, "construct_starter.rs");
example_test!(k9_odc, "k9_odc.rs");
example_test!(witnesses, "witnesses.rs");
example_test!(symmetric_sequencing, "symmetric_sequencing.rs");
example_test!(exhaustive_search, "exhaustive_search.rs");
example_test!(coverage_table, "coverage_table.rs");
example_test!(modular_toolkit, "modular_toolkit.rs");
