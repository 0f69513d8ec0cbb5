#![no_main]

use coset_classes::group::GroupSpec;
use libfuzzer_sys::fuzz_target;

// Enumeration is capped low so a valid spec for a big group cannot stall a run.
const ORDER_CAP: usize = 500;

fuzz_target!(|text: &str| {
    let Ok(spec) = GroupSpec::parse(text) else {
        return;
    };
    let again = GroupSpec::parse(&spec.to_text()).expect("canonical text parses");
    assert_eq!(again.degree, spec.degree);
    assert_eq!(again.generators, spec.generators);
    assert_eq!(again.subgroup, spec.subgroup);

    if let Ok((g, h)) = spec.build(ORDER_CAP) {
        assert!(h.is_subgroup_of(&g));
    }
});
