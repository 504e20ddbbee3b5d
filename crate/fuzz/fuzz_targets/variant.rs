#![no_main]

use halrect_bench::{parse_variant_list, Variant};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(v) = text.parse::<Variant>() {
        assert_eq!(v.to_string().parse::<Variant>().unwrap(), v);
    }
    if let Ok(list) = parse_variant_list(text) {
        assert!(list.windows(2).all(|w| w[0] < w[1]));
        for v in list {
            assert_eq!(v.to_string().parse::<Variant>().unwrap(), v);
        }
    }
});
