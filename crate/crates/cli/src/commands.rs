use num_traits::Zero;
use serde_json::{json, Value};
use thiserror::Error;
use twistvol::chambers::asymptotic::cubic_cell_of;
use twistvol::chambers::{
    dimas_vh, spline_model, vector_partition_count, verify_asymptotic_convergence, verify_lemma_a0, verify_spline,
    wall_hyperplanes, AsymptoticCase, ListId, VectorList,
};
use twistvol::exact::{format_rational, parse_rational, BigRational, Guard};
use twistvol::gitmodel::{central_valuations, classify_linearization};
use twistvol::invariants::{
    sections_decomposition, series_coefficients, sl2_invariant_dim, theorem_mess_series, verify_genfun,
};
use twistvol::volume::{volume, VolumeProblem};
use twistvol::{RootSystemA, Weight};

use crate::cache::DiskCache;
use crate::{Cli, Command, GenfunCmd, GitCmd, Outcome, SplineCmd, VpfCmd};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] twistvol::Error),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("cache: {0}")]
    Cache(String),
}

type Res<T> = Result<T, CliError>;

fn weight(s: &str) -> Res<Weight> {
    Ok(s.parse()?)
}

fn int_vector(s: &str) -> Res<Vec<i64>> {
    Ok(weight(s)?.coords().to_vec())
}

fn rational_point(s: &str) -> Res<Vec<BigRational>> {
    s.trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|p| parse_rational(p.trim()).map_err(CliError::from))
        .collect()
}

fn cubic_weight(s: &str) -> Res<[i64; 3]> {
    let v = int_vector(s)?;
    v.clone().try_into().map_err(|_| CliError::Input(format!("expected three coordinates, got {}", v.len())))
}

fn list_id(s: &str) -> Res<ListId> {
    Ok(s.parse()?)
}

fn case(s: &str) -> Res<AsymptoticCase> {
    Ok(s.parse()?)
}

fn r(x: &BigRational) -> String {
    format_rational(x)
}

fn guard_text(g: &Guard) -> String {
    let coeffs: Vec<String> = g.normal.iter().map(r).collect();
    format!("({})·x {} 0", coeffs.join(","), if g.strict { ">" } else { ">=" })
}

fn outcome(inputs: Value, outputs: Value, quiet: impl Into<String>) -> Outcome {
    Outcome { inputs, outputs, quiet: quiet.into(), failed: false }
}

pub fn run(cli: &Cli) -> Res<Outcome> {
    match &cli.command {
        Command::Dim(a) => {
            let rs = RootSystemA::new(a.rank)?;
            let w = weight(&a.weight)?;
            let d = rs.weyl_dim(&w)?;
            Ok(outcome(json!({ "rank": a.rank, "weight": w.to_string() }), json!({ "dim": d.to_string() }), d.to_string()))
        }
        Command::Invdim(a) => {
            let rs = RootSystemA::new(a.rank)?;
            let w = weight(&a.weight)?;
            let d = match &cli.cache {
                Some(path) => {
                    let cache = DiskCache::open(path)?;
                    let d = cache.invariant_dim(&rs, &w)?;
                    cache.save()?;
                    d
                }
                None => sl2_invariant_dim(&rs, &w)?,
            };
            Ok(outcome(json!({ "rank": a.rank, "weight": w.to_string() }), json!({ "invdim": d.to_string() }), d.to_string()))
        }
        Command::Sections(a) => {
            let w = weight(&a.weight)?;
            let rs = RootSystemA::new(w.rank())?;
            let parts = sections_decomposition(&rs, &w)?;
            let summands: Vec<Value> = parts
                .iter()
                .map(|(mu, m)| json!({ "weight": mu.to_string(), "multiplicity": m.to_string() }))
                .collect();
            let quiet: Vec<String> = parts.iter().map(|(mu, m)| format!("{mu} {m}")).collect();
            Ok(outcome(json!({ "weight": w.to_string() }), json!({ "summands": summands }), quiet.join("\n")))
        }
        Command::Genfun(GenfunCmd::Coeff(a)) => {
            let w = weight(&a.weight)?;
            let e: Vec<usize> = w
                .coords()
                .iter()
                .map(|&c| usize::try_from(c).map_err(|_| CliError::Input(format!("negative exponent in {w}"))))
                .collect::<Res<_>>()?;
            let series = theorem_mess_series();
            if e.len() != series.num_vars() {
                return Err(CliError::Input(format!("expected {} exponents", series.num_vars())));
            }
            let bound = e.iter().copied().max().unwrap_or(0);
            let c = series_coefficients(&series, bound).get(&e).expect("within bound");
            Ok(outcome(json!({ "multidegree": w.to_string() }), json!({ "coefficient": c.to_string() }), c.to_string()))
        }
        Command::Genfun(GenfunCmd::Verify { bound }) => {
            let rep = verify_genfun(*bound)?;
            let mism: Vec<Value> = rep
                .mismatches
                .iter()
                .map(|m| json!({ "weight": m.weight.to_string(), "series": m.series.to_string(), "oracle": m.oracle.to_string() }))
                .collect();
            let mut o = outcome(
                json!({ "bound": bound }),
                json!({ "checked": rep.checked, "mismatches": mism }),
                format!("checked={} mismatches={}", rep.checked, rep.mismatches.len()),
            );
            o.failed = !rep.mismatches.is_empty();
            Ok(o)
        }
        Command::Vpf(VpfCmd::Count { list, vectors, target }) => {
            let (name, a) = match (list, vectors) {
                (Some(l), _) => {
                    let id = list_id(l)?;
                    (id.to_string(), id.vector_list())
                }
                (None, Some(v)) => {
                    let vs: Vec<Vec<i64>> = v.split(';').map(int_vector).collect::<Res<_>>()?;
                    (v.clone(), VectorList::new(vs)?)
                }
                (None, None) => return Err(CliError::Input("either --list or --vectors is required".into())),
            };
            let t = int_vector(target)?;
            let n = vector_partition_count(&a, &t)?;
            Ok(outcome(json!({ "vectors": name, "target": format!("{t:?}") }), json!({ "count": n.to_string() }), n.to_string()))
        }
        Command::Spline(cmd) => spline(cmd),
        Command::Dimas(a) => {
            let c = case(&a.case)?;
            let x = rational_point(&a.point)?;
            let vh = dimas_vh(c, &x)?;
            let v = RootSystemA::new(c.rank())?.dimas_v_poly().eval(&x);
            let cell = match c {
                AsymptoticCase::Cubic => cubic_cell_of(&x).map_or(Value::Null, |l| json!(l)),
                AsymptoticCase::Conic => Value::Null,
            };
            let pt: Vec<String> = x.iter().map(r).collect();
            Ok(outcome(
                json!({ "case": c.to_string(), "point": pt }),
                json!({ "dimas_v": r(&v), "dimas_vh": r(&vh), "cell": cell }),
                r(&vh),
            ))
        }
        Command::Volume(a) => {
            let p = VolumeProblem::new(case(&a.case)?, weight(&a.weight)?)?;
            let v = volume(&p)?;
            Ok(outcome(
                json!({ "case": p.case().to_string(), "weight": p.lam().to_string() }),
                json!({ "volume": r(&v), "s": p.s(), "prefactor": r(&p.prefactor()) }),
                r(&v),
            ))
        }
        Command::Git(GitCmd::Classify(a)) => {
            let rep = classify_linearization(cubic_weight(&a.weight)?)?;
            let fmt3 = |v: &[i64; 3]| format!("({},{},{})", v[0], v[1], v[2]);
            let divisors: Vec<String> = rep.boundary_divisors.iter().map(ToString::to_string).collect();
            Ok(outcome(
                json!({ "weight": fmt3(&rep.input) }),
                json!({
                    "unstable_strata": rep.unstable_strata.iter().map(fmt3).collect::<Vec<_>>(),
                    "strictly_semistable_strata": rep.strictly_semistable_strata.iter().map(fmt3).collect::<Vec<_>>(),
                    "is_general": rep.is_general,
                    "signature": rep.signature,
                    "chamber": rep.chamber.to_string(),
                    "boundary_divisors": divisors,
                }),
                divisors.join(","),
            ))
        }
        Command::Valuations(a) => {
            let w = weight(&a.weight)?;
            let vals: Vec<String> = central_valuations(&w)?.iter().map(r).collect();
            Ok(outcome(json!({ "weight": w.to_string() }), json!({ "valuations": vals }), vals.join(" ")))
        }
        Command::Asymptotic(a) => {
            let w = weight(&a.weight)?;
            let ks = int_vector(&a.k)?;
            let pts = verify_asymptotic_convergence(&w, &ks)?;
            let rows: Vec<Value> = pts
                .iter()
                .map(|p| json!({ "k": p.k, "invariant_dim": p.invariant_dim.to_string(), "ratio": r(&p.ratio) }))
                .collect();
            let quiet: Vec<String> = pts.iter().map(|p| format!("{} {}", p.k, r(&p.ratio))).collect();
            Ok(outcome(json!({ "weight": w.to_string(), "k": ks }), json!({ "points": rows }), quiet.join("\n")))
        }
    }
}

fn spline(cmd: &SplineCmd) -> Res<Outcome> {
    match cmd {
        SplineCmd::Show { list } => {
            let id = list_id(list)?;
            let m = spline_model(id);
            let pieces: Vec<Value> = m
                .pieces
                .pieces()
                .iter()
                .map(|p| json!({ "cell": p.label, "guards": p.guards.iter().map(guard_text).collect::<Vec<_>>(), "poly": p.poly.to_string() }))
                .collect();
            let adj: Vec<Value> = m.adjacencies().iter().map(|(a, b, n)| json!({ "cells": [a, b], "wall": n })).collect();
            let quiet: Vec<String> = m.pieces.pieces().iter().map(|p| format!("{}: {}", p.label, p.poly)).collect();
            Ok(outcome(
                json!({ "list": id.to_string() }),
                json!({
                    "vectors": id.vectors(),
                    "lattice_index": m.index_in_ambient,
                    "lattice_basis": m.lattice.basis(),
                    "pieces": pieces,
                    "adjacencies": adj,
                }),
                quiet.join("\n"),
            ))
        }
        SplineCmd::Verify { list, points, k_max, tolerance } => {
            let id = list_id(list)?;
            let pts: Vec<Vec<i64>> = points.iter().map(|p| int_vector(p)).collect::<Res<_>>()?;
            let tol = parse_rational(tolerance)?;
            let rep = verify_spline(id, &pts, *k_max)?;
            let samples: Vec<Value> = rep
                .samples
                .iter()
                .map(|s| {
                    json!({
                        "point": s.point,
                        "cell": s.cell,
                        "deviations": s.deviations.iter().map(|(k, d)| json!({ "k": k, "deviation": r(d) })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let mut o = outcome(
                json!({ "list": id.to_string(), "points": pts, "k_max": k_max, "tolerance": r(&tol) }),
                json!({ "samples": samples, "max_deviation": r(&rep.max_deviation), "within_tolerance": rep.max_deviation <= tol }),
                r(&rep.max_deviation),
            );
            o.failed = rep.max_deviation > tol;
            Ok(o)
        }
        SplineCmd::Walls { list } => {
            let id = list_id(list)?;
            let m = spline_model(id);
            let walls = wall_hyperplanes(&id.vector_list())?;
            let rows: Vec<Value> = walls
                .iter()
                .map(|w| json!({ "normal": w.normal, "interior": w.interior, "required_order": m.required_order(w.normal) }))
                .collect();
            let quiet: Vec<String> =
                walls.iter().filter(|w| w.interior).map(|w| format!("({},{},{})", w.normal[0], w.normal[1], w.normal[2])).collect();
            Ok(outcome(json!({ "list": id.to_string() }), json!({ "walls": rows }), quiet.join("\n")))
        }
        SplineCmd::LemmaA0 { points } => {
            let grid: Vec<Vec<BigRational>> = points.iter().map(|p| rational_point(p)).collect::<Res<_>>()?;
            let d = verify_lemma_a0(&grid)?;
            let pts: Vec<Vec<String>> = grid.iter().map(|p| p.iter().map(r).collect()).collect();
            let mut o = outcome(json!({ "points": pts }), json!({ "discrepancy": r(&d) }), r(&d));
            o.failed = !d.is_zero();
            Ok(o)
        }
    }
}
