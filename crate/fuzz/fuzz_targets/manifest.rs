#![no_main]

use halrect::problems::manifest::{parse_manifest, write_manifest};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(entries) = parse_manifest(text) {
        let written = write_manifest(&entries);
        let again = parse_manifest(&written).expect("written manifest parses");
        assert_eq!(again, entries);
        for e in &entries {
            assert_eq!(e.lower.len(), e.n);
            let _ = e.resolve();
        }
    }
});
