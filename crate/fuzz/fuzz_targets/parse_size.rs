#![no_main]

use herdisc_cli::parse_size;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok((m, n)) = parse_size(text) {
        assert!(m >= 1 && n >= 1);
        assert_eq!(parse_size(&format!("{m}x{n}")), Ok((m, n)));
    }
});
