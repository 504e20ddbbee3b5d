#![no_main]

use halrect_bench::io::{read_results, write_results};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(records) = read_results(data) {
        let mut first = Vec::new();
        write_results(&mut first, &records).unwrap();
        let again = read_results(&first[..]).expect("written results parse");
        assert_eq!(again.len(), records.len());
        let mut second = Vec::new();
        write_results(&mut second, &again).unwrap();
        assert_eq!(first, second);
    }
});
