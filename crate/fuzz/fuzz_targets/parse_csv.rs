#![no_main]

use herdisc::instances::{matrix_to_csv, parse_matrix_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(a) = parse_matrix_csv(text) {
        assert!(a.rows() >= 1 && a.cols() >= 1);
        let again = parse_matrix_csv(&matrix_to_csv(&a)).expect("written CSV parses");
        assert_eq!(a, again);
    }
});
