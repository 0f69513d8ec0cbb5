#![no_main]

use coset_classes::report::{reports_from_json, reports_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let Ok(reports) = reports_from_json(text) else {
        return;
    };
    let json = reports_to_json(&reports);
    let back = reports_from_json(&json).expect("own output parses");
    assert_eq!(reports_to_json(&back), json);
});
