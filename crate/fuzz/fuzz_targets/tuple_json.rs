#![no_main]

use dessinry::MonodromyTuple;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(t) = MonodromyTuple::from_json(data) {
        let again = MonodromyTuple::from_json(&t.to_json_value().to_string()).expect("re-encoded tuple parses");
        assert_eq!(again, t);
        if t.require_valid().is_ok() && t.d() <= 8 {
            let c = t.canonical_form().expect("valid tuple has a canonical form");
            assert!(c.is_canonical());
        }
    }
});
