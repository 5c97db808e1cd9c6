#![no_main]

use dessinry::modular::radical::eval_radical;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let _ = eval_radical(data);
});
