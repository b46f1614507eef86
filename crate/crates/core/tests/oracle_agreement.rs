use icr_dmt_core::oracle::*;
use icr_dmt_core::{ChannelExponents, MultiplexingGains};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn value(prog: &ExponentProgram, step: f64) -> f64 {
    solve_grid(prog, step).unwrap().min_value.unwrap()
}

fn small_programs(g: MultiplexingGains, e: ChannelExponents) -> Vec<ExponentProgram> {
    let mut v = vec![
        build_cutset_program(1, g, e).unwrap(),
        build_cutset_program(4, g, e).unwrap(),
        build_cf_program(2, g, e).unwrap(),
    ];
    let df = build_df_programs(g, e);
    v.extend([df.relay, df.ic]);
    v
}

// The pruned search must find the same minimum as visiting every point.
#[test]
fn pruned_search_matches_exhaustive() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..25 {
        let (g, e) = random_tuple(&mut rng, false);
        for prog in small_programs(g, e) {
            let a = solve_grid(&prog, 0.1).unwrap();
            let b = solve_exhaustive(&prog, 0.1).unwrap();
            assert!(
                (a.min_value.unwrap() - b.min_value.unwrap()).abs() < 1e-9,
                "{prog:?} {g:?} {e:?}: {a:?} vs {b:?}"
            );
        }
    }
}

#[test]
fn pruned_search_matches_exhaustive_in_high_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..6 {
        // small exponents keep the exhaustive box at 21^5 points
        let g = MultiplexingGains::new(rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)).unwrap();
        let e = ChannelExponents::new(rng.random_range(0.0..1.0), rng.random_range(0.0..1.0), 1.0).unwrap();
        let df = build_df_programs(g, e);
        let hd = build_hd_af_programs(Pair::One, g, e).unwrap();
        let fd = build_fd_af_programs(Pair::One, g, e).unwrap();
        let cf = build_cf_program(3, g, e).unwrap();
        for prog in [df.coop, hd.single, hd.joint, fd.desired, cf] {
            let prog = prog.theta_max(2.0).unwrap();
            let a = value(&prog, 0.1);
            let b = solve_exhaustive(&prog, 0.1).unwrap().min_value.unwrap();
            assert!((a - b).abs() < 1e-9, "{prog:?}: {a} vs {b}");
        }
    }
}

#[test]
fn halving_the_step_never_raises_the_minimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for i in 0..40 {
        let (g, e) = random_tuple(&mut rng, i % 2 == 0);
        let mut progs = small_programs(g, e);
        progs.push(build_cf_program(3, g, e).unwrap());
        progs.push(build_df_programs(g, e).coop);
        if e.gamma == 1.0 {
            let hd = build_hd_af_programs(Pair::Two, g, e).unwrap();
            progs.extend([hd.single, hd.joint]);
        }
        for prog in &progs {
            let coarse = value(prog, 0.02);
            let fine = value(prog, 0.01);
            assert!(fine <= coarse + 0.01, "{prog:?}: {fine} > {coarse}");
        }
    }
}

#[test]
fn cf_minimizers_have_unit_relay_links() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..200 {
        let (g, e) = random_tuple(&mut rng, false);
        for k in 1..=3 {
            let prog = build_cf_program(k, g, e).unwrap();
            let res = solve_grid(&prog, 0.01).unwrap();
            assert!(res.value_of("theta31", &prog).unwrap() <= 0.01, "{g:?} {e:?} k={k}");
            assert!(res.value_of("theta32", &prog).unwrap() <= 0.01, "{g:?} {e:?} k={k}");
        }
    }
}

#[test]
fn every_program_is_feasible_on_the_unit_square() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for i in 0..200 {
        let (g, e) = random_tuple(&mut rng, i % 2 == 0);
        for c in compare_tuple(g, e, 0.05).unwrap() {
            assert!(c.oracle.is_some(), "{c:?}");
        }
    }
}

#[test]
fn random_tuples_agree_with_the_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let (g, e) = random_tuple(&mut rng, i % 2 == 0);
        for c in compare_tuple(g, e, 0.01).unwrap() {
            assert!(c.passes(), "{c:?} at {g:?} {e:?}");
            worst = worst.max(c.deviation());
        }
    }
    assert!(worst <= 0.06);
}
