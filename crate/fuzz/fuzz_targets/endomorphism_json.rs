#![no_main]

use dessinry::words::EndomorphismTable;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(tables) = EndomorphismTable::list_from_json(data) {
        for t in tables {
            let again = EndomorphismTable::from_json(&t.to_json_value().to_string()).expect("re-encoded table parses");
            assert_eq!(again.images, t.images);
        }
    }
});
