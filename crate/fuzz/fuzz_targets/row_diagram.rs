#![no_main]

use dessinry::origami::RowDiagram;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(rows) = RowDiagram::collection_from_json(data) {
        for r in rows.values() {
            if let Ok(o) = r.to_origami() {
                let _ = o.to_dessin();
            }
        }
    }
    if let Ok(r) = RowDiagram::from_json(data) {
        let _ = r.to_origami();
    }
});
