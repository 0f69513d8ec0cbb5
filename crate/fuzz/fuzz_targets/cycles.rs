#![no_main]

use coset_classes::group::Permutation;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&first, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let degree = usize::from(first % 64);
    if let Ok(p) = Permutation::parse_cycles(degree, text) {
        assert_eq!(p.degree(), degree);
        let shown = p.to_string();
        assert_eq!(Permutation::parse_cycles(degree, &shown).as_ref(), Ok(&p), "{shown}");
        assert!(p.then(&p.inverse()).is_identity());
    }
});
