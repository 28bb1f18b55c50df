macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(golden_trace, "golden_trace.rs", golden_trace_example_runs);
example!(
    stable_points,
    "stable_points.rs",
    stable_points_example_runs
);
example!(
    cube_coverage,
    "cube_coverage.rs",
    cube_coverage_example_runs
);
example!(
    pigeonhole_symmetry,
    "pigeonhole_symmetry.rs",
    pigeonhole_symmetry_example_runs
);
example!(certificates, "certificates.rs", certificates_example_runs);
example!(ne_init, "ne_init.rs", ne_init_example_runs);
example!(
    oracle_crosscheck,
    "oracle_crosscheck.rs",
    oracle_crosscheck_example_runs
);
