#![no_main]

use dessinry::origami::BipartiteOrigami;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(o) = BipartiteOrigami::from_json(data) {
        let again = BipartiteOrigami::from_json(&o.to_json_value().to_string()).expect("re-encoded origami parses");
        assert_eq!(again, o);
        if let Ok(t) = o.to_dessin() {
            let _ = BipartiteOrigami::from_dessin(&t);
        }
    }
});
