//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use footprint_core::codes::{build_prm, check_duality, ghw_exhaustive};
use footprint_core::echelon::rank;
use footprint_core::formulas::{binomial, compute_h, compute_k, conjectured_er, sorensen_dim};
use footprint_core::variety::{
    brute_force_affine_er, brute_force_er, brute_force_max_footprint, construct_witness,
    count_common_zeros, FormSpace, SearchOptions,
};
use footprint_core::verify::{quick_config, run_suite, Suite};
use footprint_core::{FieldSpec, Result};

type Outcome = Result<std::result::Result<String, String>>;
type Criterion = (&'static str, fn() -> Outcome);

fn verdict(ok: bool, detail: String) -> std::result::Result<String, String> {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn opts() -> SearchOptions {
    SearchOptions::default()
}

fn er_row(q: u32, d: u32, m: usize) -> Result<(Vec<u128>, u128, u128)> {
    let f = FieldSpec::new(q)?;
    let total = binomial(m as i64 + d as i64, d as i64)? as usize;
    let mut values = Vec::new();
    let (mut audited, mut violations) = (0, 0);
    for r in 1..=total {
        let s = brute_force_er(&f, r, d, m, FormSpace::Reduced, &opts())?;
        values.push(s.value);
        if let Some(a) = s.audit {
            audited += a.checked;
            violations += a.violations;
        }
    }
    Ok((values, audited, violations))
}

fn conjectured_row(q: u32, d: u32, m: usize) -> Result<Vec<u128>> {
    let total = binomial(m as i64 + d as i64, d as i64)?;
    (1..=total).map(|r| Ok(conjectured_er(r, d, m, q)?.value)).collect()
}

fn exhaustive_er() -> Outcome {
    let (found, _, _) = er_row(3, 2, 2)?;
    let conj = conjectured_row(3, 2, 2)?;
    Ok(verdict(found == [7, 5, 4, 2, 1, 0] && found == conj, format!("{found:?}")))
}

fn linear_and_curves() -> Outcome {
    let (linear, _, _) = er_row(3, 1, 2)?;
    let (curve, _, _) = er_row(4, 3, 1)?;
    let ok = linear == [4, 1, 0]
        && curve == [3, 2, 1, 0]
        && linear == conjectured_row(3, 1, 2)?
        && curve == conjectured_row(4, 3, 1)?;
    Ok(verdict(ok, format!("q=3 d=1 m=2 {linear:?}, q=4 d=3 m=1 {curve:?}")))
}

fn max_footprint() -> Outcome {
    let mut found = Vec::new();
    let mut formula = Vec::new();
    for r in 1..=6 {
        found.push(brute_force_max_footprint(r, 2, 2, 3, 6, &opts())?.value);
        formula.push(compute_k(r as u128, 2, 2, 3)?);
    }
    Ok(verdict(found == [8, 5, 4, 2, 1, 0] && found == formula, format!("{found:?}")))
}

fn affine_er() -> Outcome {
    let f = FieldSpec::new(3)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for d in 1..=2u32 {
        let n = binomial(2 + d as i64, d as i64)? as usize;
        let mut row = Vec::new();
        for r in 1..=n {
            let v = brute_force_affine_er(&f, r, d, 2, &opts())?.value;
            ok &= v == compute_h(r as u128, d, 2, 3)?;
            row.push(v);
        }
        rows.push(format!("d={d} {row:?}"));
    }
    Ok(verdict(ok, rows.join(", ")))
}

fn suites(list: &[Suite]) -> Outcome {
    let mut failed = Vec::new();
    let mut checked = 0;
    for &s in list {
        let report = run_suite(s, &quick_config(s))?;
        for p in &report.properties {
            checked += p.checked;
            if !p.passed {
                failed.push(format!("{s}/{}", p.name));
            }
        }
        if !report.skipped.is_empty() {
            failed.push(format!("{s} skipped {} instances", report.skipped.len()));
        }
    }
    Ok(verdict(failed.is_empty(), format!("{checked} cases checked {failed:?}")))
}

fn codes() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut ranks = 0;
    for q in [2u32, 3, 4] {
        let f = FieldSpec::new(q)?;
        for m in 1..=3usize {
            for d in 1..=m as u32 * (q - 1) {
                let code = build_prm(&f, d, m)?;
                ok &= rank(&f, &code.generator) as u128 == sorensen_dim(d, m, q)?;
                ranks += 1;
            }
        }
    }
    notes.push(format!("{ranks} ranks"));
    let f3 = FieldSpec::new(3)?;
    let c = build_prm(&f3, 2, 1)?;
    let h: Vec<u128> = (1..=3).map(|r| ghw_exhaustive(&f3, &c, r, &opts())).collect::<Result<_>>()?;
    ok &= h == [2, 3, 4];
    notes.push(format!("PRM_3(2,1) {h:?}"));
    let d1 = ghw_exhaustive(&f3, &build_prm(&f3, 2, 2)?, 1, &opts())?;
    let f2 = FieldSpec::new(2)?;
    let d1_binary = ghw_exhaustive(&f2, &build_prm(&f2, 2, 2)?, 1, &opts())?;
    ok &= d1 == 6 && d1_binary == 2;
    notes.push(format!("d_1 {d1}, {d1_binary}"));
    for (q, d, m) in [(3u32, 1u32, 1usize), (3, 1, 2), (3, 2, 1), (3, 2, 2), (2, 3, 1)] {
        let report = check_duality(&FieldSpec::new(q)?, d, m, usize::MAX, &opts())?;
        ok &= report.holds && !report.rows.is_empty();
    }
    Ok(verdict(ok, notes.join(", ")))
}

fn witnesses() -> Outcome {
    let mut count = 0;
    let mut bad = Vec::new();
    for q in [3u32, 4, 5] {
        let f = FieldSpec::new(q)?;
        for m in 1..=2usize {
            for d in 1..q {
                let total = binomial(m as i64 + d as i64, d as i64)?;
                for r in 1..=total {
                    let w = construct_witness(&f, r, d, m, &opts())?;
                    count += 1;
                    let zeros = count_common_zeros(&f, &w.forms, m)?;
                    if zeros != conjectured_er(r, d, m, q)?.value || w.forms.len() as u128 != r {
                        bad.push(format!("q={q} d={d} m={m} r={r}"));
                    }
                }
            }
        }
    }
    Ok(verdict(bad.is_empty(), format!("{count} witnesses {bad:?}")))
}

fn footprint_audit() -> Outcome {
    let (_, audited, violations) = er_row(3, 2, 2)?;
    Ok(verdict(audited > 0 && violations == 0, format!("{audited} subspaces, {violations} violations")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("exhaustive e_r for q=3 d=2 m=2", exhaustive_er),
        ("linear forms and curves", linear_and_curves),
        ("maximal footprint equals K_r", max_footprint),
        ("affine maxima equal H_r", affine_er),
        ("Macaulay-form equivalences", || suites(&[Suite::Macaulay])),
        (
            "extremal combinatorics on the hypercube",
            || suites(&[Suite::ClementsLindstrom, Suite::Wei, Suite::Affinecomb]),
        ),
        (
            "projective-to-affine and expander",
            || suites(&[Suite::FootprintDecomposition, Suite::Specialization, Suite::Expander]),
        ),
        ("PRM codes and duality", codes),
        ("witness constructions", witnesses),
        ("footprint bound audit", footprint_audit),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let line = match run() {
            Ok(Ok(detail)) => format!("PASS {}: {name} ({detail})", k + 1),
            Ok(Err(detail)) => {
                failures += 1;
                format!("FAIL {}: {name} ({detail})", k + 1)
            }
            Err(e) => {
                failures += 1;
                format!("FAIL {}: {name} (error: {e})", k + 1)
            }
        };
        println!("{line} [{:.2?}]", start.elapsed());
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
