#![no_main]

use dessinry::words::FreeWord;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(w) = data.parse::<FreeWord>() {
        let again: FreeWord = w.to_string().parse().expect("displayed word parses");
        assert_eq!(again, w);
        assert!(w.concat(&w.inverse()).reduced().is_empty());
    }
});
