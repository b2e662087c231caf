mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seqsan::etfs::etfs_sanitize;
use seqsan::eval::{ba_sanitize, edit_distance, lost_ghost, verify_all, Level};
use seqsan::mcsr::{implausible_set, mcsr_sanitize, McsrParams, Theta, UniformCost};
use seqsan::pfs::pfs_sanitize;
use seqsan::tfs::expand;
use seqsan::{
    contains_sensitive, run_pipeline, tfs_compact, tfs_sanitize, Alphabet, Pipeline, PipelineOptions,
    SanitizationInstance, SensitiveSpec, Sym, SEP,
};

/// A random instance described by its parameters and seed.
fn instance() -> impl Strategy<Value = SanitizationInstance> {
    (2usize..=4, 2usize..=5, 0usize..=60, 0usize..=5, any::<u64>()).prop_map(|(sigma, k, extra, count, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        common::random_instance(&mut rng, k + 1 + extra, sigma, k, count)
    })
}

/// Every way of deleting or replacing the separators of `y`.
fn some_replacement_is_clean(y: &[Sym], inst: &SanitizationInstance) -> bool {
    let seps = y.iter().filter(|&&s| s == SEP).count();
    let options = inst.sigma() + 1;
    (0..options.pow(seps as u32)).any(|mut code| {
        let mut z = Vec::with_capacity(y.len());
        for &s in y {
            if s != SEP {
                z.push(s);
                continue;
            }
            let c = code % options;
            code /= options;
            if c < inst.sigma() {
                z.push(c as Sym);
            }
        }
        !contains_sensitive(&z, inst)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn sensitive_set_is_closed(inst in instance()) {
        let k = inst.k();
        for i in 0..=inst.n() - k {
            prop_assert_eq!(inst.is_sensitive(i), inst.sensitive_patterns().contains(inst.window(i)));
        }
    }

    #[test]
    fn total_order_output_has_every_property(inst in instance()) {
        let x = tfs_sanitize(&inst);
        prop_assert!(verify_all(x.tokens(), &inst, &Level::ALL).is_ok());
        prop_assert_eq!(&expand(&tfs_compact(&inst), inst.w()).unwrap(), &x);
    }

    #[test]
    fn partial_order_output_is_no_longer(inst in instance()) {
        let x = tfs_sanitize(&inst);
        let y = pfs_sanitize(&inst);
        let levels = [Level::C1, Level::Pi1, Level::P2, Level::P3, Level::P4];
        prop_assert!(verify_all(y.tokens(), &inst, &levels).is_ok());
        prop_assert!(y.len() <= x.len());
        prop_assert!(y.separator_count() <= x.separator_count());
    }

    #[test]
    fn edit_optimal_output_beats_total_order(inst in instance()) {
        let m = etfs_sanitize(&inst);
        prop_assert!(verify_all(&m.t, &inst, &[Level::C1, Level::P1, Level::P2]).is_ok());
        prop_assert_eq!(m.distance, edit_distance(inst.w(), &m.t));
        prop_assert!(m.distance <= edit_distance(inst.w(), tfs_sanitize(&inst).tokens()));
        prop_assert_eq!(m.separators, m.t.iter().filter(|&&s| s == SEP).count());
    }

    #[test]
    fn replacement_is_clean_or_provably_impossible(inst in instance(), tau in 1usize..4) {
        let y = pfs_sanitize(&inst);
        let params = McsrParams { tau, theta: Theta::Auto };
        match mcsr_sanitize(y.tokens(), &inst, &UniformCost, params, None) {
            Ok(r) => {
                prop_assert!(!r.z.contains(&SEP));
                prop_assert!(!contains_sensitive(&r.z, &inst));
                let (lost, _) = lost_ghost(y.tokens(), &r.z, inst.k(), tau, inst.sensitive_patterns());
                prop_assert!(lost.is_empty());
                prop_assert!(r.total_weight <= y.separator_count() as u64);
            }
            Err(e) => {
                prop_assert!(e.is_infeasible());
                if y.separator_count() <= 6 {
                    prop_assert!(!some_replacement_is_clean(y.tokens(), &inst));
                }
            }
        }
    }

    #[test]
    fn implausible_windows_avoided_at_sites(inst in instance(), rho in -2.0f64..=0.0) {
        prop_assume!(inst.k() >= 3);
        let x = tfs_sanitize(&inst);
        let set = implausible_set(inst.w(), inst.sigma(), inst.k(), rho).unwrap();
        let params = McsrParams { tau: 1, theta: Theta::Auto };
        if let Ok(r) = mcsr_sanitize(x.tokens(), &inst, &UniformCost, params, Some(&set)) {
            for start in r.site_windows(inst.k()) {
                prop_assert!(!set.contains(&r.z[start..start + inst.k()]));
            }
        }
    }

    #[test]
    fn baseline_hides_everything_in_place(inst in instance()) {
        let z = ba_sanitize(&inst);
        prop_assert_eq!(z.len(), inst.n());
        prop_assert!(!contains_sensitive(&z, &inst));
    }
}

#[test]
fn pipelines_are_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let w = common::random_string(&mut rng, 400, 4);
    let patterns = common::sample_patterns(&mut rng, &w, 4, 6);
    let inst = SanitizationInstance::new(Alphabet::synthetic(4), w, 4, SensitiveSpec::Patterns(patterns)).unwrap();
    let opts = PipelineOptions {
        tau: 2,
        rho: Some(-0.5),
        ..Default::default()
    };
    for p in Pipeline::ALL {
        let a = run_pipeline(&inst, p, &opts);
        let b = run_pipeline(&inst, p, &opts);
        match (a, b) {
            (Ok(a), Ok(b)) => {
                assert_eq!(a.output, b.output, "{p}");
                assert_eq!(a.report.to_text(), b.report.to_text(), "{p}");
            }
            (Err(a), Err(b)) => assert_eq!(a, b),
            _ => panic!("{p} succeeded only once"),
        }
    }
}

#[test]
fn tpm_removes_every_separator_on_example() {
    let inst = SanitizationInstance::from_text("aabaaacbcbbbaabbacaab", 4, &["baaa", "bbaa"]).unwrap();
    let o = run_pipeline(&inst, Pipeline::Tpm, &PipelineOptions::default()).unwrap();
    assert!(!o.output.contains(&SEP));
    assert!(!contains_sensitive(&o.output, &inst));
    assert_eq!(o.report.len_z, Some(o.output.len()));
}
