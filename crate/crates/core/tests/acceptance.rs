//! Acceptance criteria 1-10: one PASS/FAIL line each, exact equality throughout.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hodgekp_core::algebra::rational::{one, q};
use hodgekp_core::algebra::tpoly::{monomial_basis, TPoly, VarKind};
use hodgekp_core::curve::{
    build_curve, catalog, i_series, identification_residual, perturbed_residual, witt_coefficients, CurveParams,
};
use hodgekp_core::kp::{hirota_at, hirota_windowed, mutation_test};
use hodgekp_core::operators::{
    commutator_suite, conjugation_check, couplings_from_log_r, givental_direct, givental_factorized,
    lemma_changevars_check, operator_equality_check, Mode,
};
use hodgekp_core::tau::{dressed_tau, monomial_inputs, rl_identity_check, tau_big, tau_small, PointData, TauKind};
use hodgekp_core::{HbarPoly, Result};

fn point(q: i64, p: i64, s: i64) -> CurveParams {
    CurveParams::from_ints(q, p, s).expect("valid point")
}

struct Outcome {
    ok: bool,
    note: String,
}

fn outcome(ok: bool, note: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { ok, note: note.into() })
}

fn c1() -> Result<Outcome> {
    let mut bad = Vec::new();
    for p in catalog() {
        let c = build_curve(&p, 18)?;
        let i = i_series(&c, 8)?;
        if !i.agrees_to(&c.r.reflect(), 8) {
            bad.push(p.to_string());
        }
    }
    outcome(bad.is_empty(), format!("I(z) = R(-z) through z^8 at 5 points; mismatches {bad:?}"))
}

fn c2() -> Result<Outcome> {
    let mut zero = 0;
    for p in catalog() {
        let c = build_curve(&p, 15)?;
        if identification_residual(&c, 4)?.is_zero() {
            zero += 1;
        }
    }
    let control = perturbed_residual(4)?;
    let low: Vec<_> = control.nonzero_entries().into_iter().filter(|(k, m, _)| k + m <= 4).collect();
    outcome(
        zero == 5 && !low.is_empty(),
        format!("4x4 residual zero at {zero}/5 points; control has {} nonzero entries with k+m<=4", low.len()),
    )
}

fn c3() -> Result<Outcome> {
    let inputs: Vec<TPoly> = monomial_basis(VarKind::Big, 9, false)
        .into_iter()
        .map(|m| TPoly::monomial(VarKind::Big, 9, m, HbarPoly::one()))
        .collect();
    let mut failures = 0;
    for p in [point(1, 3, 2), point(-1, 2, 1)] {
        let c = build_curve(&p, 11)?;
        let couplings = couplings_from_log_r(&c.log_r);
        let rep = operator_equality_check(
            &inputs,
            |x| givental_direct(&couplings, x, Mode::Standard, None),
            |x| givental_factorized(&c.r, x, Mode::Standard, None),
        )?;
        failures += rep.failures.len();
    }
    outcome(failures == 0, format!("direct = factorized on {} T-monomials x 2 R-series; {failures} mismatches", inputs.len()))
}

fn c4() -> Result<Outcome> {
    let mut failures = 0;
    for p in [point(1, 3, 2), point(-1, 2, 1)] {
        let c = build_curve(&p, 11)?;
        let a = witt_coefficients(&c.f)?;
        failures += lemma_changevars_check(&p, &c.r, &a, 3, 9)?.failures.len();
    }
    outcome(failures == 0, format!("k <= 3 at weight 9, 2 points; {failures} mismatches"))
}

fn c5() -> Result<Outcome> {
    let mut inputs = monomial_inputs(9);
    inputs.push(tau_big(TauKind::Kw, 9)?);
    let mut failures = 0;
    for p in [point(1, 3, 2), point(-1, 2, 1)] {
        let data = PointData::new(&p, 9)?;
        failures += rl_identity_check(&data, &inputs, Mode::Standard)?.failures.len();
    }
    outcome(failures == 0, format!("{} inputs (odd-t monomials and truncated tau_KW) x 2 points; {failures} mismatches", inputs.len()))
}

fn dressed_suite(kind: TauKind, w: u32, points: &[CurveParams]) -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut ok = true;
    for p in points {
        let window = kind.window(w, 4);
        let data = PointData::new(p, window.source_weight())?;
        let d = dressed_tau(&data, kind, w, 4)?;
        ok &= d.agree;
        let mut hirota = Vec::new();
        for h in [one(), q(1, 2)] {
            let rep = hirota_windowed(&d.tau, &d.window, &h, 3)?;
            ok &= rep.passed();
            hirota.push(rep.status);
        }
        notes.push(format!("{p}: agree={} hirota={hirota:?}", d.agree));
    }
    outcome(ok, notes.join("; "))
}

fn c6() -> Result<Outcome> {
    dressed_suite(TauKind::Kw, 9, &[point(1, 3, 2), point(-1, 2, 1), point(0, 4, 2)])
}

fn c7() -> Result<Outcome> {
    dressed_suite(TauKind::Bgw, 8, &[point(1, 3, 2), point(-1, 2, 1), point(0, 4, 2)])
}

fn c8() -> Result<Outcome> {
    let even = |p: &CurveParams, kind: TauKind| -> Result<bool> {
        let data = PointData::new(p, kind.window(9, 4).source_weight())?;
        let d = dressed_tau(&data, kind, 9, 4)?;
        Ok(d.tau.contains_even_times())
    };
    let special = point(-1, 2, 1);
    let generic = point(1, 3, 2);
    let special_free = !even(&special, TauKind::Kw)? && !even(&special, TauKind::Bgw)?;
    let generic_even = even(&generic, TauKind::Kw)? && even(&generic, TauKind::Bgw)?;
    outcome(
        special_free && generic_even,
        format!("(-1,2,1) even-time free: {special_free}; (1,3,2) depends on even times: {generic_even}"),
    )
}

fn c9() -> Result<Outcome> {
    let kw = tau_small(TauKind::Kw, 12)?;
    let bgw = tau_small(TauKind::Bgw, 10)?;
    let kw_rep = hirota_at(&kw, &one(), 4)?;
    let bgw_rep = hirota_at(&bgw, &one(), 3)?;
    let mutants = mutation_test(&kw.specialize_hbar(&one())?, 4, 20, 20240601)?;
    outcome(
        kw_rep.passed() && bgw_rep.passed() && mutants.all_detected() && mutants.mutants.len() == 20,
        format!(
            "KW W=12 y=4 {}, BGW W=10 y=3 {}, mutants detected {}/{}",
            kw_rep.status,
            bgw_rep.status,
            mutants.detected,
            mutants.mutants.len()
        ),
    )
}

fn c10() -> Result<Outcome> {
    let comm = commutator_suite(8, 8, 3, 20240601)?;
    let p = point(1, 3, 2);
    let c = build_curve(&p, 8 + 2 * 3 + 2)?;
    let a = witt_coefficients(&c.f)?;
    let modes: Vec<i64> = (-3..=3).filter(|k| *k != 0).collect();
    let conj = conjugation_check(&c.h, &a, 8, &modes)?;
    let failing: Vec<_> = comm.cases.iter().filter(|c| c.failures > 0).map(|c| c.relation.clone()).collect();
    outcome(
        comm.passed() && conj.passed(),
        format!("commutator suites failing {failing:?}; conjugation over modes {modes:?}: {}", conj.passed()),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, Duration, fn() -> Result<Outcome>); 10] = [
        (1, Duration::from_secs(1), c1),
        (2, Duration::from_secs(5), c2),
        (3, Duration::from_secs(120), c3),
        (4, Duration::from_secs(60), c4),
        (5, Duration::from_secs(300), c5),
        (6, Duration::from_secs(600), c6),
        (7, Duration::from_secs(600), c7),
        (8, Duration::from_secs(60), c8),
        (9, Duration::from_secs(600), c9),
        (10, Duration::from_secs(120), c10),
    ];
    let mut all = true;
    for (n, budget, run) in criteria {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let (ok, note) = match result {
            Ok(o) => (o.ok && took <= budget, o.note),
            Err(e) => (false, format!("error: {e}")),
        };
        all &= ok;
        println!(
            "criterion {n:>2}: {} ({} ms, budget {} s) {note}",
            if ok { "PASS" } else { "FAIL" },
            took.as_millis(),
            budget.as_secs()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
