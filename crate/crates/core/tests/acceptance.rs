//! One line per acceptance criterion; exits non-zero if any criterion fails.

use quadalg::catalog::{Kepler5DParams, Oscillator8DParams, YCMParams};
use quadalg::jet::TrialSettings;
use quadalg::ode::{kummer, GridSettings};
use quadalg::report::*;
use std::time::Instant;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn named<'a>(fs: &'a [Finding], suffix: &'a str) -> impl Iterator<Item = &'a Finding> + 'a {
    fs.iter().filter(move |f| f.name.ends_with(suffix))
}

fn worst<'a>(fs: impl Iterator<Item = &'a Finding>) -> f64 {
    fs.map(|f| f.residual.unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
}

fn kepler_grid() -> Vec<Kepler5DParams> {
    let mut out = Vec::new();
    for c1 in [0.0, 0.25] {
        for c2 in [0.0, 0.25] {
            for l in [0.0, 3.0] {
                out.push(Kepler5DParams::new(1.0, c1, c2, 1.0, l).unwrap());
            }
        }
    }
    out
}

fn oscillator_set() -> Vec<Oscillator8DParams> {
    vec![
        Oscillator8DParams::new(1.0, 0.0, 0.0, 1.0, 0.0, 0.0).unwrap(),
        Oscillator8DParams::new(1.3, 0.3, 0.1, 0.9, -3.0, 0.0).unwrap(),
        Oscillator8DParams::new(0.7, 0.5, 0.25, 1.0, 0.0, -8.0).unwrap(),
    ]
}

fn c1_euler_adopted() -> Outcome {
    let t = Instant::now();
    let s = EulerSample::draw(1000, 1);
    let secs = t.elapsed().as_secs_f64();
    outcome(s.max_adopted < 1e-12 && secs < 1.0, format!("max residual {:.2e} over 1000 points in {secs:.3} s", s.max_adopted))
}

fn c1_euler_literal() -> Outcome {
    let s = EulerSample::draw(1000, 1);
    outcome(
        s.literal_above_tenth >= 0.99,
        format!(
            "literal x0: {:.1}% of points above 0.1 (median {:.3}, max {:.3}); need >= 99%",
            100.0 * s.literal_above_tenth,
            s.median_literal,
            s.max_literal
        ),
    )
}

fn c2_fock() -> Outcome {
    let fs: Vec<Finding> = kepler_grid().iter().flat_map(|k| kepler_algebra_findings(k, 5)).collect();
    let inv: Vec<&Finding> = named(&fs, "/fock-invariants").collect();
    let ok = inv.len() == 8 * 6 && inv.iter().all(|f| f.holds);
    outcome(ok, format!("{} realizations, worst invariant residual {:.2e}", inv.len(), worst(inv.into_iter())))
}

fn c2_printed_spectrum() -> Outcome {
    let fs: Vec<Finding> = kepler_grid().iter().flat_map(|k| kepler_algebra_findings(k, 5)).collect();
    let gap = named(&fs, "/printed-spectrum").map(|f| f.values["relative_gap"]).fold(0.0, f64::max);
    let corrected = worst(named(&fs, "/energy"));
    outcome(
        gap < 1e-12,
        format!(
            "largest relative gap to the printed closed form {gap:.3e}; with the 1/2 and hbar^2 m^2 = 4c + l + hbar^2 it is {corrected:.1e}"
        ),
    )
}

fn c3_closure() -> Outcome {
    let kep: Vec<Finding> = kepler_grid().iter().flat_map(|k| kepler_algebra_findings(k, 5)).collect();
    let osc: Vec<Finding> = oscillator_set().iter().flat_map(|o| oscillator_algebra_findings(o, 5)).collect();
    let jacobi = worst(named(&kep, "/jacobi")).max(worst(named(&osc, "/jacobi")));
    let best = |fs: &[Finding], labels: &[&str]| -> (String, f64) {
        labels
            .iter()
            .map(|l| (l.to_string(), worst(named(fs, &format!("/printed-relations/{l}")))))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap()
    };
    let (kl, kr) = best(&kep, &["as-written"]);
    let (ol, or) = best(&osc, &["as-written", "square-coefficient=-gamma"]);
    let osc_as_written = worst(named(&osc, "/printed-relations/as-written"));
    outcome(
        jacobi < 1e-10 && kr < 1e-9 && or < 1e-9,
        format!(
            "Jacobi {jacobi:.2e}; Kepler relations {kl} {kr:.2e}; oscillator {ol} {or:.2e} (as written {osc_as_written:.2e})"
        ),
    )
}

fn c4_jet() -> Outcome {
    let t = Instant::now();
    let settings = TrialSettings { trials: 20, seed: 0, degree: 6, ..Default::default() };
    let kepler = Kepler5DParams::new(1.0, 0.25, 0.1, 1.0, 0.0).unwrap();
    let kep = kepler_operator_findings(&kepler, &settings);
    let integrals = worst(kep.iter().filter(|f| f.status != Status::Finding && f.name.contains("[H,")));
    let so5 = worst(kep.iter().filter(|f| f.name.starts_with("jet/kepler5d/[L")));
    let ycm = ycm_operator_findings(&YCMParams::new(kepler, 0.0, 0.0, 0.0).unwrap(), &settings);
    let reduction = ycm.iter().find(|f| f.name == "jet/ycm/T=0-reduction").map(|f| f.holds).unwrap_or(false);
    let osc = oscillator_operator_findings(&Oscillator8DParams::new(1.0, 0.3, 0.1, 1.0, 0.0, 0.0).unwrap(), &settings);
    let osc_req = worst(osc.iter().filter(|f| f.status != Status::Finding));
    let secs = t.elapsed().as_secs_f64();
    let required_ok = kep.iter().chain(&ycm).chain(&osc).all(|f| f.status != Status::Fail);
    outcome(
        integrals < 1e-10 && so5 < 1e-11 && reduction && osc_req < 1e-10 && required_ok && secs < 60.0,
        format!(
            "Kepler integrals {integrals:.2e}, so(5) {so5:.2e}, T=0 reduction identical {reduction}, oscillator {osc_req:.2e}, {secs:.1} s"
        ),
    )
}

fn c5_triple() -> Outcome {
    let ycm = YCMParams::new(Kepler5DParams::new(1.0, 0.0, 0.0, 1.0, 0.0).unwrap(), 0.0, 0.0, 0.0).unwrap();
    let fs = duality_findings(&ycm, 0, 0, &GridSettings::default());
    let get = |s: &str| fs.iter().find(|f| f.name.ends_with(s)).unwrap();
    let (m2s, chain, err) = (get("/m=2s"), get("/chain"), get("/oracle-error"));
    let (par, nohalf) = (get("/parabolic-vs-oracle"), get("/without-half-vs-oracle"));
    let osc_m = get("/duality-oscillator-m-vs-oracle");
    outcome(
        m2s.holds && chain.holds && err.holds && par.holds && !nohalf.holds,
        format!(
            "oracle {:.10} (+- {:.1e}); parabolic {:.3} supported, without 1/2 {:.3} rejected; duality m=2s gap {:.1e}, chain gap {:.1e}; oscillator m gives {:.3}",
            par.values["oracle"],
            err.residual.unwrap_or(f64::NAN),
            par.values["closed_form"],
            nohalf.values["closed_form"],
            m2s.residual.unwrap(),
            chain.residual.unwrap(),
            osc_m.values["closed_form"],
        ),
    )
}

fn c6_oscillator_oracle() -> Outcome {
    let params = Oscillator8DParams::new(1.0, 0.0, 0.0, 1.0, 0.0, 0.0).unwrap();
    let fs = oscillator_oracle_findings(&params, 3, &GridSettings::default());
    let ladder: Vec<f64> = named(&fs, "").filter(|f| f.name.starts_with("oracle/osc8d/block1/")).map(|f| f.values["oracle"]).collect();
    let blocks = worst(fs.iter().filter(|f| f.name.contains("/block")));
    let ground = fs.iter().find(|f| f.name == "oracle/osc8d/ground-vs-printed").unwrap();
    outcome(
        blocks < 1e-6 && ground.holds,
        format!("block ladder {:?}, worst {:.1e}; two-block ground {:.9} vs 4", ladder, blocks, ground.values["oracle"]),
    )
}

fn c7_kummer() -> Outcome {
    // (b - a) M(a - 1) + (2a - b + x) M(a) - a M(a + 1) = 0 with a = -n
    let mut worst_rel: f64 = 0.0;
    for n in 1..=10u32 {
        for b in [0.5, 1.0, 2.5, 7.0] {
            for x in [0.1, 1.0, 3.7, 12.0] {
                let a = -(n as f64);
                let coef = [b - a, 2.0 * a - b + x, -a];
                let ns = [n + 1, n, n - 1];
                let sum: f64 = (0..3).map(|i| coef[i] * kummer(ns[i], b, x).unwrap()).sum();
                // rounding scale: the series with |terms|, which is F(-n, b, -x) for b > 0
                let scale: f64 = (0..3).map(|i| coef[i].abs() * kummer(ns[i], b, -x).unwrap()).sum();
                worst_rel = worst_rel.max(sum.abs() / scale);
            }
        }
    }
    let unit = [(0.5, 0.3), (3.0, -2.0), (1.0, 40.0)].iter().all(|&(b, x)| kummer(0, b, x).unwrap() == 1.0);
    let s1 = kummer(1, 2.0, 1.0).unwrap();
    let s2 = kummer(2, 3.0, 1.0).unwrap();
    let ok = worst_rel < 1e-14 && unit && (s1 - 0.5).abs() < 1e-15 && (s2 - 5.0 / 12.0).abs() < 1e-15;
    outcome(ok, format!("contiguous recurrence {worst_rel:.1e}; F(0,b,x) = 1 {unit}; spot values {s1}, {s2:.15}"))
}

fn c8_determinism() -> Outcome {
    let args = ["quadalg", "verify", "kepler5d", "--p", "3", "--trials", "20", "--seed", "7"];
    let render = || {
        let cli = <quadalg::cli::Cli as clap::Parser>::parse_from(args);
        quadalg::cli::execute(&cli.command).unwrap().to_json()
    };
    let (a, b) = (render(), render());
    outcome(a == b && !a.is_empty(), format!("two verify runs, {} bytes each, identical {}", a.len(), a == b))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1a euler identity, adopted x0", c1_euler_adopted),
        ("1b euler identity, literal x0 regression", c1_euler_literal),
        ("2a fock invariants, kepler grid p <= 5", c2_fock),
        ("2b (u, E) against the printed kepler spectrum", c2_printed_spectrum),
        ("3  closure on matrices", c3_closure),
        ("4  jet verifier", c4_jet),
        ("5  spectrum triple check", c5_triple),
        ("6  oscillator oracle", c6_oscillator_oracle),
        ("7  kummer", c7_kummer),
        ("8  determinism", c8_determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {name}: {} | {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
