use squintlab::array::ArrayConfig;
use squintlab::beamform::*;
use squintlab::channel::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn fig2_ordering_smoke() {
    let cfg = ArrayConfig::half_wavelength(128, 300e9).unwrap();
    let grid = SubcarrierGrid::new(32, 300e9, 30e9).unwrap();
    let dict = angle_dictionary(&cfg, 300e9, 256).unwrap();
    let snr_db = 0.0;
    let trials = 10;
    let mut sums = [0.0f64; 5]; // digital, sdps, ttd, pc, plain
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + t);
        let paths = PathSet::draw(8, &PathDrawParams::default(), &mut rng).unwrap();
        let ch = generate_channel(&cfg, &grid, &paths).unwrap();
        let h = single_user_rows(&ch);
        let targets = design_digital_sd(&h, 1, 1.0).unwrap();

        // digital
        let se_d = spectral_efficiency(&h, &targets, snr_db, 1.0).unwrap();

        // sd-ps: per-m phase-only analog + per-m scalar digital
        let sd = design_sd_phase_shifters(&targets);
        let d_sd = fit_digital_per_subcarrier(sd.iter(), &targets, 1.0).unwrap();
        let f_sd: Vec<_> = sd.iter().zip(d_sd.iter()).map(|(a, d)| a * d).collect();
        let se_sd = spectral_efficiency(&h, &f_sd, snr_db, 1.0).unwrap();

        // ttd-dpp: beams at all 8 path angles, K_T=16
        let (hb_ttd, net) = design_ttd_dpp(&paths.angles(), &cfg, 16, false, 1.0).unwrap();
        let eff: Vec<_> = (0..32)
            .map(|m| effective_analog(&hb_ttd.analog, Some(&net), grid.frequency(m)).unwrap())
            .collect();
        let d_ttd = fit_digital_per_subcarrier(eff.iter(), &targets, 1.0).unwrap();
        let f_ttd: Vec<_> = eff.iter().zip(d_ttd.iter()).map(|(a, d)| a * d).collect();
        let se_ttd = spectral_efficiency(&h, &f_ttd, snr_db, 1.0).unwrap();

        // plain hybrid + phase-corrected on the same analog
        let hb = design_hybrid_plain(&h, 8, 1, &dict, 1.0).unwrap();
        let f_plain: Vec<_> = (0..32).map(|m| hb.effective(grid.frequency(m), m).unwrap()).collect();
        let se_plain = spectral_efficiency(&h, &f_plain, snr_db, 1.0).unwrap();
        let d_pc = phase_correction(&hb.analog, &targets, 1.0).unwrap();
        let f_pc: Vec<_> = d_pc.iter().map(|d| &hb.analog * d).collect();
        let se_pc = spectral_efficiency(&h, &f_pc, snr_db, 1.0).unwrap();

        for (i, v) in [se_d, se_sd, se_ttd, se_pc, se_plain].iter().enumerate() {
            sums[i] += v / trials as f64;
        }
    }
    println!(
        "digital={:.3} sdps={:.3} ttd={:.3} pc={:.3} plain={:.3}; dig-ttd gap {:.1}%",
        sums[0], sums[1], sums[2], sums[3], sums[4],
        (sums[0] - sums[2]) / sums[0] * 100.0
    );
}
