fn main() {
    use rindler_core::*;
    let cfg = validate(PhysicalConfig::new(5e-3, 100)).unwrap();
    let m = mode::build_mode(&cfg);
    let o1 = mode::overlap_spectrum(&m, &cfg, &mode::GridSpec::auto(&cfg)).unwrap();
    let o2 = mode::mirror_mode(&o1);
    let th = rindler::thermal_spectrum(&o1.wavenumbers, cfg.accel_group);
    let mm = correlations::two_detector_moments(&o1, &o2, &th).unwrap();
    println!("log_cross = {}", mm.log_cross);
    println!("log_n     = {}", mm.log_n_i);
    println!("gap       = {}", mm.log_cross - mm.log_n_i);
}
