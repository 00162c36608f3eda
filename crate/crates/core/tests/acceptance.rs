//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the binary exits nonzero when any criterion fails.

mod common;

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cohprobe::discord::{
    discord, discord_analytic, discord_bruteforce, discord_max_locus, hadamard_both, ising_thermal_discord,
    ising_thermal_state, LocusGrid,
};
use cohprobe::ed::{nearest_neighbour_correlators, ChainModel, ChainSpec, EigenSystem};
use cohprobe::kitaev::{self, KitaevPoint};
use cohprobe::quadrature::{integrate_1d, QuadratureSpec};
use cohprobe::quantum::{
    coherence, reconstruct_one_site, reconstruct_two_site, reduce, shannon_entropy_bits, von_neumann_entropy,
};
use cohprobe::scan::{crossover_locus, fit_crossover, singularity_report, sweep, LocusSweep, ModelFamily, SweepSpec};
use cohprobe::tfim::{self, Convention, TfimPoint};
use cohprobe::xx::{self, XxPoint, YyTreatment};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn quad() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn check(ok: bool, failures: &mut Vec<String>, msg: String) {
    if !ok {
        failures.push(msg);
    }
}

fn verdict(detail: String, failures: Vec<String>) -> Outcome {
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{}; {}", failures.join("; "), detail))
    }
}

fn within_budget(start: Instant, budget: Duration, failures: &mut Vec<String>) -> String {
    let took = start.elapsed();
    check(took <= budget, failures, format!("took {took:.1?}, budget {budget:?}"));
    format!("{took:.1?}")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut f = Vec::new();
    let c = |p: TfimPoint| tfim::one_site_coherence(&p, &quad()).map_err(|e| e.to_string());
    let sb0 = c(TfimPoint::symmetry_broken(0.0).unwrap())?;
    let tg0 = c(TfimPoint::thermal_ground(0.0).unwrap())?;
    let sb_inf = c(TfimPoint::symmetry_broken(1e3).unwrap())?;
    let tg_inf = c(TfimPoint::thermal_ground(1e3).unwrap())?;
    check((sb0 - 1.0).abs() <= 1e-9, &mut f, format!("C_SB(0) = {sb0}"));
    check((tg0 - 1.0).abs() <= 1e-9, &mut f, format!("C_TG(0) = {tg0}"));
    check(sb_inf < 1e-2, &mut f, format!("C_SB(1e3) = {sb_inf}"));
    check(tg_inf < 1e-2, &mut f, format!("C_TG(1e3) = {tg_inf}"));
    let t = within_budget(start, Duration::from_secs(10), &mut f);
    verdict(
        format!("C(0) = {sb0:.12} / {tg0:.12}, C(1e3) = {sb_inf:.3e} / {tg_inf:.3e} [{t}]"),
        f,
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut f = Vec::new();
    let spec = SweepSpec::new(0.5, 1.5, 1e-3).map_err(|e| e.to_string())?;
    let curve = sweep(ModelFamily::TfimThermalGround, &spec, &quad()).map_err(|e| e.to_string())?;
    check(
        curve.failures().count() == 0,
        &mut f,
        format!("{} failed points", curve.failures().count()),
    );
    let (at, chi) = curve.extremal_abs_chi().ok_or("no samples")?;
    check(
        (at - 1.0).abs() <= spec.step + 1e-12,
        &mut f,
        format!("extremal |χ| at λ = {at}"),
    );
    let report = singularity_report(&curve, spec.diff_step).map_err(|e| e.to_string())?;
    check(
        report.growth >= 5.0,
        &mut f,
        format!("|χ| grows {:.3}× under step halving, need ≥ 5×", report.growth),
    );
    let t = within_budget(start, Duration::from_secs(60), &mut f);
    verdict(
        format!(
            "extremal χ = {chi:.4} at λ = {at:.4}; χ(h) = {:.4}, χ(h/2) = {:.4} [{t}]",
            report.chi, report.chi_halved
        ),
        f,
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut f = Vec::new();
    let c = |l: f64| xx::xx_coherence(&XxPoint::new(l).unwrap(), YyTreatment::Symmetric).map_err(|e| e.to_string());
    let mut max_above = 0.0f64;
    for i in 0..=1000 {
        max_above = max_above.max(c(1.0 + i as f64 * 1e-3)?.abs());
    }
    check(max_above <= 1e-12, &mut f, format!("max C on [1, 2] = {max_above:.3e}"));
    let mut min_below = f64::INFINITY;
    for i in 0..=990 {
        min_below = min_below.min(c(i as f64 * 1e-3)?);
    }
    check(min_below > 0.0, &mut f, format!("min C on [0, 0.99] = {min_below:.3e}"));
    let g = xx::correlators(&XxPoint::new(0.0).unwrap());
    check(
        (g.gzz + 4.0 / (PI * PI)).abs() <= 1e-10,
        &mut f,
        format!("⟨σᶻσᶻ⟩(0) = {}", g.gzz),
    );
    check(
        (g.gxx + 2.0 / PI).abs() <= 1e-10,
        &mut f,
        format!("⟨σˣσˣ⟩(0) = {}", g.gxx),
    );
    let t = within_budget(start, Duration::from_secs(10), &mut f);
    verdict(
        format!(
            "max C on [1,2] = {max_above:.1e}, min C on [0,0.99] = {min_below:.3e}, zz(0) = {:.12}, xx(0) = {:.12} [{t}]",
            g.gzz, g.gxx
        ),
        f,
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut f = Vec::new();
    let mut worst_gap = 0.0f64;
    for i in 1..=9 {
        let jx = i as f64 * 0.1;
        let g = kitaev::gap(&KitaevPoint::on_path(jx).unwrap(), 256).map_err(|e| e.to_string())?;
        worst_gap = worst_gap.max((g - 2.0 * (2.0 * jx - 1.0).max(0.0)).abs());
    }
    check(worst_gap <= 1e-6, &mut f, format!("gap error {worst_gap:.3e}"));

    let spec = SweepSpec::new(0.1, 0.9, 1e-3).map_err(|e| e.to_string())?;
    let curve = sweep(ModelFamily::KitaevPath, &spec, &quad()).map_err(|e| e.to_string())?;
    check(
        curve.failures().count() == 0,
        &mut f,
        format!("{} failed points", curve.failures().count()),
    );
    let pts = curve.chi_points();
    let (mut kink, mut at) = (0.0f64, f64::NAN);
    for w in pts.windows(3) {
        let d2 = (w[2].1 - 2.0 * w[1].1 + w[0].1).abs();
        if d2 > kink {
            kink = d2;
            at = w[1].0;
        }
    }
    check(
        (at - 0.5).abs() <= spec.step + 1e-12,
        &mut f,
        format!("non-analyticity at J_x = {at}"),
    );
    let g1 = kitaev::xx_link_correlator(&KitaevPoint::on_path(1.0).unwrap(), &quad()).map_err(|e| e.to_string())?;
    check((g1 - 1.0).abs() <= 1e-10, &mut f, format!("⟨σˣσˣ⟩(1) = {g1}"));
    let t = within_budget(start, Duration::from_secs(300), &mut f);
    verdict(
        format!("gap error {worst_gap:.1e}; max |Δ²χ| = {kink:.4} at J_x = {at:.3}; ⟨σˣσˣ⟩(1) = {g1} [{t}]"),
        f,
    )
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut f = Vec::new();
    let kbts: Vec<f64> = (1..=12).map(|i| i as f64 / 20.0).collect();
    let locus = crossover_locus(&kbts, &LocusSweep::default(), &quad()).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for (kbt, m) in &locus {
        rows.push(format!("{kbt:.2}→{:.4}", m.lambda));
        if *kbt <= 0.4 + 1e-9 {
            let miss = (kbt - 2.0 * (m.lambda - 1.0)).abs();
            check(
                miss <= 0.05,
                &mut f,
                format!("kBT = {kbt:.2}: |kBT − 2(λ_M − 1)| = {miss:.3}"),
            );
        }
    }
    let pairs: Vec<(f64, f64)> = locus.iter().map(|(t, m)| (*t, m.lambda)).collect();
    let fit = fit_crossover(&pairs).map_err(|e| e.to_string())?;
    check(
        (fit.slope - 0.5).abs() <= 0.05,
        &mut f,
        format!("sub-knee slope {:.4}, need 0.5 ± 10%", fit.slope),
    );
    check(
        (fit.knee_kbt - 0.4).abs() <= 0.05,
        &mut f,
        format!("knee at kBT = {:.3}", fit.knee_kbt),
    );
    for (kbt, want) in [(0.2, 1.10), (0.3, 1.15)] {
        let got = pairs
            .iter()
            .find(|p| (p.0 - kbt).abs() < 1e-9)
            .map(|p| p.1)
            .unwrap_or(f64::NAN);
        check(
            (got - want).abs() <= 0.03,
            &mut f,
            format!("λ_M({kbt}) = {got:.4}, expected {want} ± 0.03"),
        );
    }
    let t = within_budget(start, Duration::from_secs(600), &mut f);
    verdict(
        format!(
            "slope {:.4}, intercept {:.4}, knee {:.3}; locus {} [{t}]",
            fit.slope,
            fit.intercept,
            fit.knee_kbt,
            rows.join(" ")
        ),
        f,
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut f = Vec::new();
    let kbt = 0.5;
    let mut detail = Vec::new();
    for lambda in [0.8, 1.2] {
        let exact = tfim::thermal_correlators(lambda, kbt, &quad()).map_err(|e| e.to_string())?;
        let mut errs = Vec::new();
        for n in [8, 12] {
            let spec = ChainSpec::new(ChainModel::Tfim(Convention::FieldOverCoupling), n, lambda, kbt)
                .map_err(|e| e.to_string())?;
            let sys = EigenSystem::new(&spec).map_err(|e| e.to_string())?;
            let ed = nearest_neighbour_correlators(&sys.gibbs(kbt).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let err = [ed.sx - exact.sx, ed.gyy - exact.gyy, ed.gzz - exact.gzz]
                .iter()
                .fold(0.0f64, |a, d| a.max(d.abs()));
            detail.push(format!(
                "λ={lambda} N={n}: sx {:.4}/{:.4} yy {:.4}/{:.4} zz {:.4}/{:.4} (max err {err:.4})",
                ed.sx, exact.sx, ed.gyy, exact.gyy, ed.gzz, exact.gzz
            ));
            errs.push(err);
        }
        check(
            errs[1] <= 2e-2,
            &mut f,
            format!("λ = {lambda}: N=12 error {:.4} > 2e-2", errs[1]),
        );
        check(
            errs[1] < errs[0],
            &mut f,
            format!("λ = {lambda}: N=12 error not below N=8"),
        );
    }
    let t = within_budget(start, Duration::from_secs(120), &mut f);
    verdict(format!("{} [{t}]", detail.join("; ")), f)
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut f = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0xd15c);
    let mut worst = 0.0f64;
    let mut worst_rot = 0.0f64;
    for k in 0..1000 {
        let x = common::random_x_state(&mut rng);
        let a = discord_analytic(&x).map_err(|e| e.to_string())?;
        let b = discord_bruteforce(x.state(), 181).map_err(|e| e.to_string())?;
        worst = worst.max((a - b).abs());
        if k % 10 == 0 {
            let rotated = hadamard_both(x.state()).map_err(|e| e.to_string())?;
            let r = discord_bruteforce(&rotated, 181).map_err(|e| e.to_string())?;
            worst_rot = worst_rot.max((r - a).abs());
        }
    }
    check(worst <= 1e-6, &mut f, format!("analytic vs brute force {worst:.3e}"));
    check(
        worst_rot <= 1e-8,
        &mut f,
        format!("x↔z swap changes discord by {worst_rot:.3e}"),
    );

    let mut peaks = Vec::new();
    for kbt in [0.1, 0.3, 0.5] {
        let mut best = (0.0, f64::NEG_INFINITY);
        for i in 0..=200 {
            let l = i as f64 * 0.01;
            let d = ising_thermal_discord(l, kbt, &quad()).map_err(|e| format!("kBT {kbt}, λ {l}: {e}"))?;
            if d > best.1 {
                best = (l, d);
            }
        }
        peaks.push(format!("kBT={kbt}: max D {:.4} at λ {:.2}", best.1, best.0));
    }
    let mut hot = 0.0f64;
    for l in [0.2, 0.8, 1.0, 1.5, 2.0] {
        hot = hot.max(ising_thermal_discord(l, 1e3, &quad()).map_err(|e| e.to_string())?);
    }
    check(hot < 1e-3, &mut f, format!("discord at kBT = 1e3 is {hot:.3e}"));
    let kbts: Vec<f64> = (1..=14).map(|i| i as f64 / 20.0).collect();
    let locus = discord_max_locus(&kbts, &LocusGrid::default(), &quad()).map_err(|e| e.to_string())?;
    let locus_txt: Vec<String> = locus.iter().map(|p| format!("{:.2}→{:.4}", p.kbt, p.lambda)).collect();
    let t = within_budget(start, Duration::from_secs(300), &mut f);
    verdict(
        format!(
            "analytic vs brute {worst:.1e}, swap {worst_rot:.1e}, hot {hot:.1e}; {}; locus {} [{t}]",
            peaks.join(", "),
            locus_txt.join(" ")
        ),
        f,
    )
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut f = Vec::new();
    let q = quad();
    let mut states = 0usize;
    let grid: Vec<f64> = (0..=200).map(|i| i as f64 * 0.01).collect();
    for &l in &grid {
        for p in [
            TfimPoint::symmetry_broken(l).unwrap(),
            TfimPoint::thermal_ground(l).unwrap(),
            TfimPoint::gibbs(l, 0.3).unwrap(),
        ] {
            let rho = reconstruct_one_site(&tfim::one_site_expectations(&p, &q).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            common::assert_valid_state(&rho, &format!("{p:?}"));
            states += 1;
        }
        if l > 0.0 {
            let pair = reconstruct_two_site(&tfim::thermal_two_site(l, 0.3, &q).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            common::assert_valid_state(&pair, &format!("Ising pair λ = {l}"));
            common::assert_valid_state(
                ising_thermal_state(l, 0.3, &q).map_err(|e| e.to_string())?.state(),
                "X state",
            );
            states += 2;
        }
        let x = xx::two_site_state(&XxPoint::new(l).unwrap(), YyTreatment::Symmetric).map_err(|e| e.to_string())?;
        common::assert_valid_state(&x, &format!("XX λ = {l}"));
        states += 1;
    }
    let mut worst_identity = 0.0f64;
    for i in 0..=100 {
        let p = KitaevPoint::on_path(i as f64 * 0.01).unwrap();
        let rho = kitaev::x_link_state(&p, &q).map_err(|e| e.to_string())?;
        common::assert_valid_state(&rho, "Kitaev link");
        states += 1;
        let g = kitaev::xx_link_correlator(&p, &q).map_err(|e| e.to_string())?;
        let c = coherence(&rho).map_err(|e| e.to_string())?;
        worst_identity = worst_identity.max((c - kitaev::closed_form_coherence(g)).abs());
        let s = von_neumann_entropy(&rho).map_err(|e| e.to_string())?;
        worst_identity = worst_identity.max((c - (2.0 - s)).abs());
    }
    check(
        worst_identity <= 1e-9,
        &mut f,
        format!("Kitaev closed form off by {worst_identity:.3e}"),
    );

    // quadrature linearity and determinism on a fixed polynomial pair
    let p1 = |x: f64| 1.0 - 2.0 * x + 0.5 * x.powi(3);
    let p2 = |x: f64| x.powi(5) - 0.3 * x * x;
    let int = |g: &dyn Fn(f64) -> f64| {
        integrate_1d(g, -1.0, 2.0, &q)
            .map(|r| r.value)
            .map_err(|e| e.to_string())
    };
    let (a, b) = (1.7, -0.6);
    let lhs = int(&|x| a * p1(x) + b * p2(x))?;
    let rhs = a * int(&p1)? + b * int(&p2)?;
    check(
        (lhs - rhs).abs() <= 10.0 * q.abs_tol.max(q.rel_tol * rhs.abs()),
        &mut f,
        format!("linearity {lhs} vs {rhs}"),
    );
    check(
        int(&p1)?.to_bits() == int(&p1)?.to_bits(),
        &mut f,
        "quadrature not deterministic".into(),
    );

    // entropy bounds on random mixed states
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    for dim in [2, 4, 8] {
        for rank in 1..=dim {
            let rho = common::random_density(&mut rng, dim, rank);
            let s = von_neumann_entropy(&rho).map_err(|e| e.to_string())?;
            let sd = shannon_entropy_bits(&rho.diagonal()).map_err(|e| e.to_string())?;
            let c = coherence(&rho).map_err(|e| e.to_string())?;
            let max = (dim as f64).log2();
            check(
                s >= -1e-12 && s <= max + 1e-12,
                &mut f,
                format!("S = {s} outside [0, {max}]"),
            );
            check(sd + 1e-12 >= s, &mut f, format!("S(diag) {sd} < S {s}"));
            check(
                c >= -1e-12 && c <= max + 1e-12,
                &mut f,
                format!("C = {c} outside [0, {max}]"),
            );
            if dim == 4 {
                let ra = reduce(&rho, 2, &[0]).map_err(|e| e.to_string())?;
                let rb = reduce(&rho, 2, &[1]).map_err(|e| e.to_string())?;
                let sa = von_neumann_entropy(&ra).map_err(|e| e.to_string())?;
                let sb = von_neumann_entropy(&rb).map_err(|e| e.to_string())?;
                check(s <= sa + sb + 1e-12, &mut f, "subadditivity".into());
                check(s + 1e-12 >= (sa - sb).abs(), &mut f, "Araki-Lieb".into());
                if let Ok(x) = cohprobe::XState::new(rho.clone()) {
                    let d = discord(&x).map_err(|e| e.to_string())?;
                    check(d <= sa.min(sb) + 1e-9, &mut f, "discord above local entropy".into());
                }
            }
        }
    }
    let t = within_budget(start, Duration::from_secs(120), &mut f);
    verdict(
        format!("{states} states checked; Kitaev identity within {worst_identity:.1e} [{t}]"),
        f,
    )
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into());
            Err(msg)
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {n}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {n}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
