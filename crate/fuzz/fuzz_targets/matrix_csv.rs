#![no_main]

use coset_classes::matrix::{parse_rational, DivisorMatrix};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(m) = DivisorMatrix::from_csv(text) {
        let csv = m.to_csv();
        let back = DivisorMatrix::from_csv(&csv).expect("own output parses");
        assert_eq!(back, m);
        assert_eq!(back.to_csv(), csv);
    }
    if let Ok(q) = parse_rational(text) {
        assert_eq!(parse_rational(&q.to_string()).as_ref(), Ok(&q));
    }
});
