#![no_main]

use halrect_bench::SweepConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cfg) = SweepConfig::parse(text) {
        assert!(!cfg.variants.is_empty());
        assert!(cfg.n_min <= cfg.n_max);
        assert!(!cfg.rho.is_empty());
        assert!(cfg.rho.iter().all(|r| r.is_finite() && *r >= 0.0));
        for v in &cfg.variants {
            cfg.solver_config(*v).validate().unwrap();
        }
    }
});
