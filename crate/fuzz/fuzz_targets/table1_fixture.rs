#![no_main]

use dessinry::modular::table1::parse_table1;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(rows) = parse_table1(data) {
        assert!(rows.iter().all(|r| r.n > 0));
    }
});
