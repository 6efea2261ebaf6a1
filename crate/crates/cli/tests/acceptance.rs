//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use twistvol::chambers::asymptotic::{cubic_cell_of, CELL_REPRESENTATIVES};
use twistvol::chambers::{spline_model, verify_asymptotic_convergence, verify_lemma_a0, verify_spline, ListId};
use twistvol::exact::{format_rational, int, parse_rational, rat, BigRational};
use twistvol::gitmodel::{classify_linearization, BoundaryDivisor, ChamberLocation};
use twistvol::invariants::{sections_decomposition, sl2_invariant_dim, verify_genfun};
use twistvol::volume::{conic_volume_polynomial, volume, VolumeProblem};
use twistvol::chambers::AsymptoticCase::{self, Conic, Cubic};
use twistvol::{RootSystemA, Weight};

const CONIC_TIME_LIMIT: Duration = Duration::from_secs(1);
const CUBIC_TIME_LIMIT: Duration = Duration::from_secs(60);
const GENFUN_TIME_LIMIT: Duration = Duration::from_secs(30);
const SPLINE_TOLERANCE: (i64, i64) = (3, 20);
const SPLINE_K: i64 = 25;
const CONVERGENCE_TOLERANCE: (i64, i64) = (8, 100);
const CONVERGENCE_K: i64 = 40;

type Verdict = Result<String, String>;

fn timed_volume(case: AsymptoticCase, w: &[i64], expected: &BigRational, limit: Duration) -> Verdict {
    let p = VolumeProblem::new(case, Weight::new(w.to_vec())).map_err(|e| e.to_string())?;
    let t = Instant::now();
    let v = volume(&p).map_err(|e| e.to_string())?;
    let dt = t.elapsed();
    let label = format!("{case}{}", p.lam());
    if &v != expected {
        return Err(format!("{label} = {}, expected {}", format_rational(&v), format_rational(expected)));
    }
    if dt > limit {
        return Err(format!("{label} took {dt:?} (limit {limit:?})"));
    }
    Ok(format!("{label} = {} in {} ms", format_rational(&v), dt.as_millis()))
}

fn join(parts: Vec<Verdict>) -> Verdict {
    let (ok, bad): (Vec<_>, Vec<_>) = parts.into_iter().partition(Result::is_ok);
    let ok: Vec<String> = ok.into_iter().map(Result::unwrap).collect();
    let bad: Vec<String> = bad.into_iter().map(Result::unwrap_err).collect();
    if bad.is_empty() {
        Ok(ok.join("; "))
    } else if ok.is_empty() {
        Err(bad.join("; "))
    } else {
        Err(format!("{} (holding: {})", bad.join("; "), ok.join("; ")))
    }
}

fn conic_volumes() -> Verdict {
    join(vec![
        timed_volume(Conic, &[2, 0], &int(1), CONIC_TIME_LIMIT),
        timed_volume(Conic, &[4, 4], &int(3264), CONIC_TIME_LIMIT),
    ])
}

fn conic_closed_form() -> Verdict {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2);
    let poly = conic_volume_polynomial();
    let mut bad = Vec::new();
    for _ in 0..10 {
        let w = [rng.gen_range(0..=20), rng.gen_range(0..=20)];
        let v = volume(&VolumeProblem::new(Conic, Weight::new(w)).unwrap()).unwrap();
        if v != poly.eval_i64(&w) {
            bad.push(format!("{w:?}"));
        }
    }
    if bad.is_empty() {
        Ok("10 seeded random weights match".into())
    } else {
        Err(format!("mismatch at {}", bad.join(", ")))
    }
}

fn cubic_volumes() -> Verdict {
    join(vec![
        timed_volume(Cubic, &[4, 0, 0], &int(56960), CUBIC_TIME_LIMIT),
        timed_volume(Cubic, &[0, 3, 0], &int(1_146_960), CUBIC_TIME_LIMIT),
        timed_volume(Cubic, &[8, 6, 0], &parse_rational("28744287411306496/2187").unwrap(), CUBIC_TIME_LIMIT),
    ])
}

fn generating_function() -> Verdict {
    let t = Instant::now();
    let rep = verify_genfun(12).map_err(|e| e.to_string())?;
    let dt = t.elapsed();
    let summary = format!("checked={} mismatches={} in {} ms", rep.checked, rep.mismatches.len(), dt.as_millis());
    if rep.checked == 2197 && rep.mismatches.is_empty() && dt <= GENFUN_TIME_LIMIT {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn expected_sections(list: &[(&str, u64)]) -> BTreeMap<Weight, u64> {
    list.iter().map(|(w, m)| (w.parse().unwrap(), *m)).collect()
}

fn sections() -> Verdict {
    let l400 = [("4,0,0", 1), ("0,2,0", 1), ("0,0,0", 1)];
    let l800 = [
        ("8,0,0", 1), ("4,2,0", 2), ("0,4,0", 2), ("3,1,1", 1), ("1,2,1", 1),
        ("2,0,2", 1), ("4,0,0", 1), ("0,2,0", 1), ("0,0,0", 1),
    ];
    let l1200 = [
        ("12,0,0", 1), ("8,2,0", 2), ("6,3,0", 1), ("4,4,0", 3), ("0,6,0", 3), ("7,1,1", 1),
        ("5,2,1", 2), ("3,3,1", 3), ("1,4,1", 1), ("6,0,2", 2), ("4,1,2", 1), ("2,2,2", 3),
        ("3,0,3", 1), ("1,1,3", 1), ("0,0,4", 1), ("8,0,0", 1), ("4,2,0", 2), ("0,4,0", 2),
        ("3,1,1", 1), ("1,2,1", 1), ("2,0,2", 1), ("4,0,0", 1), ("0,2,0", 1), ("0,0,0", 1),
    ];
    let rs = RootSystemA::new(3).unwrap();
    let mut parts = Vec::new();
    for (lam, list) in [("4,0,0", &l400[..]), ("8,0,0", &l800[..]), ("12,0,0", &l1200[..])] {
        let lam: Weight = lam.parse().unwrap();
        let got: BTreeMap<Weight, u64> = sections_decomposition(&rs, &lam).unwrap().into_iter().collect();
        let want = expected_sections(list);
        parts.push(if got == want {
            Ok(format!("L{lam}: {} summands", got.len()))
        } else {
            Err(format!("L{lam}: got {got:?}"))
        });
    }
    join(parts)
}

fn properties() -> Verdict {
    let rs3 = RootSystemA::new(3).unwrap();
    let side = 13i64;
    let cube: Vec<u64> = (0..side.pow(3))
        .into_par_iter()
        .map(|i| sl2_invariant_dim(&rs3, &Weight::new([i / (side * side), (i / side) % side, i % side])).unwrap())
        .collect();
    let at = |v: [i64; 3]| cube[(v[0] * side * side + v[1] * side + v[2]) as usize];
    let box_of = |n: i64| (0..=n).flat_map(move |a| (0..=n).flat_map(move |b| (0..=n).map(move |c| [a, b, c])));

    let mut parts = Vec::new();
    let nonzero: Vec<[i64; 3]> = box_of(6).filter(|&v| at(v) > 0).collect();
    let mut pairs = 0;
    let mut violations = Vec::new();
    for &p in &nonzero {
        for &q in &nonzero {
            pairs += 1;
            if at([p[0] + q[0], p[1] + q[1], p[2] + q[2]]) + 1 < at(p) + at(q) {
                violations.push(format!("{p:?}+{q:?}"));
            }
        }
    }
    parts.push(if violations.is_empty() {
        Ok(format!("superadditivity on {pairs} pairs"))
    } else {
        Err(format!("superadditivity fails at {}", violations[0]))
    });

    let asym = box_of(10).find(|&[a, b, c]| at([a, b, c]) != at([c, b, a]));
    parts.push(asym.map_or(Ok("duality on [0,10]³".into()), |v| Err(format!("duality fails at {v:?}"))));

    let rs2 = RootSystemA::new(2).unwrap();
    let conic_bad = (0..=20i64)
        .flat_map(|a| (0..=20i64).map(move |b| (a, b)))
        .find(|&(a, b)| sl2_invariant_dim(&rs2, &Weight::new([a, b])).unwrap() != u64::from(a % 2 == 0 && b % 2 == 0));
    parts.push(conic_bad.map_or(Ok("conic even-even rule on [0,20]²".into()), |v| Err(format!("conic rule fails at {v:?}"))));

    let central = |m: i64| box_of(10).filter(|&[a, b, c]| at([a, b, c]) > 0 && (a + 2 * b + 3 * c) % m != 0).collect::<Vec<_>>();
    let mod2 = central(2);
    parts.push(if mod2.is_empty() {
        Ok("a+2b+3c even whenever invariants exist".into())
    } else {
        Err(format!("parity rule fails at {:?}", mod2[0]))
    });
    let mod4 = central(4);
    parts.push(if mod4.is_empty() {
        Ok("a+2b+3c ≡ 0 mod 4 whenever invariants exist".into())
    } else {
        let v = mod4[0];
        Err(format!(
            "mod-4 vanishing is false: {} weights in [0,10]³ violate it, first {v:?} with invariant dimension {}",
            mod4.len(),
            at(v)
        ))
    });
    join(parts)
}

fn cell_interior_points(id: ListId) -> Vec<Vec<i64>> {
    let pts: &[[i64; 3]] = match id {
        ListId::A1 => &[[13, 2, 3], [4, 2, 4], [3, 2, 13]],
        ListId::A2 => &[[6, 2, 6], [6, 2, 2], [2, 2, 6], [6, 5, 6], [6, 10, 2]],
        ListId::A3 => &[[12, 2, 2], [8, 3, 2], [3, 1, 3], [8, 8, 2], [3, 4, 3]],
        ListId::A4 => &[[2, 2, 12], [2, 3, 8], [3, 1, 3], [2, 8, 8], [3, 4, 3]],
    };
    pts.iter().map(|p| p.to_vec()).collect()
}

fn splines() -> Verdict {
    let mut parts = Vec::new();
    let mut pairs = 0;
    for id in ListId::ALL {
        let m = spline_model(id);
        pairs += m.adjacencies().len();
        let fails = m.wall_divisibility_failures();
        if !fails.is_empty() {
            parts.push(Err(format!("{id}: divisibility fails on {fails:?}")));
        }
    }
    parts.push(Ok(format!("divisibility on {pairs} adjacent pairs")));

    let fracs = [rat(1, 2), int(1), rat(3, 2), int(2), int(5)];
    let grid: Vec<Vec<BigRational>> = (0..25)
        .map(|i| vec![fracs[i % 5].clone(), fracs[i / 5].clone(), fracs[(i + i / 5) % 5].clone() + rat(1, 3)])
        .collect();
    let d = verify_lemma_a0(&grid).map_err(|e| e.to_string())?;
    parts.push(if d == int(0) {
        Ok("lemma a0 exact at 25 points".into())
    } else {
        Err(format!("lemma a0 discrepancy {}", format_rational(&d)))
    });

    let tol = rat(SPLINE_TOLERANCE.0, SPLINE_TOLERANCE.1);
    for id in ListId::ALL {
        let pts = cell_interior_points(id);
        let rep = verify_spline(id, &pts, SPLINE_K).map_err(|e| format!("{id}: {e}"))?;
        let cells: Vec<&str> = rep.samples.iter().map(|s| s.cell.as_str()).collect();
        let mut distinct = cells.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let covered = distinct.len() == spline_model(id).pieces.pieces().len();
        let dev = format_rational(&rep.max_deviation);
        parts.push(if rep.max_deviation <= tol && covered {
            Ok(format!("{id} max deviation {dev} over cells {}", cells.join(",")))
        } else {
            Err(format!("{id} max deviation {dev} over cells {}", cells.join(",")))
        });
    }
    join(parts)
}

fn convergence() -> Verdict {
    let pts = verify_asymptotic_convergence(&Weight::new([2, 2, 2]), &[CONVERGENCE_K]).map_err(|e| e.to_string())?;
    let p = &pts[0];
    // The reference is k³ · 8 · 5/72.
    let expected = int(CONVERGENCE_K.pow(3)) * int(8) * rat(5, 72);
    let ratio = BigRational::from_integer(p.invariant_dim.into()) / expected;
    if ratio != p.ratio {
        return Err(format!("library ratio {} differs from {}", format_rational(&p.ratio), format_rational(&ratio)));
    }
    let dev = twistvol::exact::rational::abs(&(ratio.clone() - int(1)));
    let summary = format!("dim = {} at k = {CONVERGENCE_K}, ratio {}", p.invariant_dim, format_rational(&ratio));
    if dev <= rat(CONVERGENCE_TOLERANCE.0, CONVERGENCE_TOLERANCE.1) {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn homogeneity() -> Verdict {
    let base = volume(&VolumeProblem::new(Cubic, Weight::new([4, 0, 0])).unwrap()).unwrap();
    let mut parts = Vec::new();
    for k in [2i64, 3] {
        let v = volume(&VolumeProblem::new(Cubic, Weight::new([4 * k, 0, 0])).unwrap()).unwrap();
        let want = base.clone() * int(k.pow(12));
        parts.push(if v == want {
            Ok(format!("vol({},0,0) = {k}^12 · {}", 4 * k, format_rational(&base)))
        } else {
            Err(format!("vol({},0,0) = {}", 4 * k, format_rational(&v)))
        });
    }
    join(parts)
}

fn git() -> Verdict {
    use BoundaryDivisor::*;
    let div = |a| classify_linearization(a).unwrap().boundary_divisors;
    let mut parts = vec![
        if div([1, 0, 0]) == [E3] { Ok("(1,0,0)→{E3}".to_string()) } else { Err(format!("(1,0,0)→{:?}", div([1, 0, 0]))) },
        if div([0, 1, 0]) == [E1, E3] { Ok("(0,1,0)→{E1,E3}".to_string()) } else { Err(format!("(0,1,0)→{:?}", div([0, 1, 0]))) },
    ];
    let ample = classify_linearization([2, 1, 2]).unwrap();
    parts.push(if ample.is_general && ample.boundary_divisors == [E1, E2, E3] {
        Ok("(2,1,2) general→{E1,E2,E3}".into())
    } else {
        Err(format!("(2,1,2): {ample:?}"))
    });
    let r = classify_linearization([1, 1, 1]).unwrap();
    parts.push(if !r.is_general && r.strictly_semistable_strata.contains(&[1, -2, 1]) {
        Ok("(1,1,1) non-general with (1,-2,1) strictly semistable".into())
    } else {
        Err(format!("(1,1,1): {r:?}"))
    });
    let disagree: Vec<&str> = CELL_REPRESENTATIVES
        .iter()
        .filter(|(label, rep)| {
            let git_cell = classify_linearization(*rep).unwrap().chamber;
            let vh_cell = cubic_cell_of(&rep.map(int));
            git_cell != ChamberLocation::Cell(label) || vh_cell != Some(*label)
        })
        .map(|(l, _)| *l)
        .collect();
    parts.push(if disagree.is_empty() {
        Ok("8 cell representatives agree".into())
    } else {
        Err(format!("cells disagree: {disagree:?}"))
    });
    join(parts)
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("conic volumes", conic_volumes),
        ("conic closed form", conic_closed_form),
        ("cubic volumes", cubic_volumes),
        ("generating function", generating_function),
        ("sections decompositions", sections),
        ("property suites", properties),
        ("spline verification", splines),
        ("asymptotic convergence", convergence),
        ("volume homogeneity", homogeneity),
        ("GIT classification", git),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict = check();
        let secs = t.elapsed().as_secs_f64();
        let (tag, detail) = match &verdict {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {:>2} {tag} [{name}] ({secs:.2}s): {detail}", i + 1);
        failures += usize::from(verdict.is_err());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
