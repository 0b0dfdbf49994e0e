//! Request/response plumbing for the command line front end.
//!
//! Every command consumes a [`RunRequest`] and produces a JSON document with
//! a top-level `"schema": "1"` field.  Multi-indices serialize as integer
//! arrays and rationals as strings like `"3/4"`, so exactness survives the
//! wire.  The fixture corpus lives here too: `verify-examples` replays it
//! and reports pass/fail per fixture.

use crate::bohr;
use crate::error::{Error, Result};
use crate::extensions::{
    self, Budget, ClosureTag, PExponent,
};
use crate::index::{FreqSet, MultiIndex};
use crate::lattice::{
    self, affine_lattice, annihilator, annihilator_average, enumerate_box, enumerate_orthant,
    reflection_gcd, AffineLattice,
};
use crate::numerics::{
    self, lp_norm_estimate, quadratic_coefficient_check, tn_growth_table, GridSpec,
};
use crate::polyoracle::{witness_search_even, LaurentPoly, WitnessGrid};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::str::FromStr;

/// Budget fields accepted on the wire.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct BudgetOpts {
    pub max_rounds: Option<u32>,
    pub max_coord: Option<i64>,
}

impl BudgetOpts {
    pub fn to_budget(self) -> Budget {
        let defaults = Budget::default();
        Budget {
            max_rounds: self.max_rounds.unwrap_or(defaults.max_rounds),
            max_coord: self.max_coord.unwrap_or(defaults.max_coord),
        }
    }
}

/// One fully described invocation of the toolkit.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum RunRequest {
    Classify {
        set: Vec<Vec<i64>>,
        p: String,
    },
    Extend {
        set: Vec<Vec<i64>>,
        n: u32,
    },
    Distance {
        set: Vec<Vec<i64>>,
        lambda: Vec<i64>,
    },
    Complete {
        set: Vec<Vec<i64>>,
        n: u32,
        #[serde(default)]
        budget: BudgetOpts,
    },
    Coset {
        set: Vec<Vec<i64>>,
        cap: Option<i64>,
    },
    Witness {
        set: Vec<Vec<i64>>,
        n: u32,
        lambda: Vec<i64>,
    },
    LemmaLine {
        p: String,
        eps: Option<f64>,
    },
    LemmaPlane {
        p: String,
        eps: Option<f64>,
    },
    LemmaInf {
        alpha: Vec<i64>,
        eps: Option<f64>,
    },
    FigureData {
        set: Vec<Vec<i64>>,
        max_distance: u32,
        #[serde(rename = "box")]
        box_radius: i64,
    },
    Growth {
        n: u32,
        p: String,
        m_max: u32,
    },
    DirichletClassify {
        set: Vec<u64>,
        p: String,
    },
    DirichletLift {
        q: String,
    },
    DirichletOmega {
        n: u64,
    },
    DirichletProject {
        terms: Vec<(u64, String)>,
        m: u32,
    },
    ReflectionGcd {
        a: u64,
        b: u64,
    },
    VerifyExamples,
}

/// A finished run: the JSON document and the process exit code.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub document: Value,
    pub exit: i32,
}

fn ok(document: Value) -> RunOutput {
    RunOutput { document, exit: 0 }
}

fn parse_set(rows: &[Vec<i64>]) -> Result<FreqSet> {
    FreqSet::from_rows(rows)
}

fn parse_index(row: &[i64]) -> Result<MultiIndex> {
    MultiIndex::new(row.to_vec())
}

fn rational_str(r: &BigRational) -> String {
    r.to_string()
}

fn poly_json(f: &LaurentPoly) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .map(|(idx, c)| json!([idx.entries(), rational_str(c)]))
        .collect();
    json!({ "dim": f.dim(), "terms": terms })
}

fn poly_from_json(dim: usize, terms: &[(Vec<i64>, String)]) -> Result<LaurentPoly> {
    let parsed = terms
        .iter()
        .map(|(idx, c)| {
            let coeff = BigRational::from_str(c)
                .map_err(|_| Error::input(format!("cannot parse rational {c:?}")))?;
            Ok((MultiIndex::new(idx.clone())?, coeff))
        })
        .collect::<Result<Vec<_>>>()?;
    LaurentPoly::from_terms(dim, parsed)
}

fn lattice_json(lat: &AffineLattice) -> Value {
    json!({
        "dim": lat.dim(),
        "base": lat.base().entries(),
        "basis": lat.basis().iter().map(|b| b.entries()).collect::<Vec<_>>(),
        "rank": lat.rank(),
    })
}

fn verdict_json(contractive: bool, reason: &extensions::Reason, evidence: &Option<MultiIndex>) -> Value {
    json!({
        "contractive": contractive,
        "reason": format!("{reason:?}"),
        "evidence": evidence.as_ref().map(|e| e.entries().to_vec()),
    })
}

/// Execute one request.
pub fn run(request: &RunRequest) -> Result<RunOutput> {
    match request {
        RunRequest::Classify { set, p } => {
            let gamma = parse_set(set)?;
            let p = PExponent::parse(p)?;
            let verdict = extensions::is_contractive_projection_set(&gamma, &p)?;
            let mut doc = verdict_json(verdict.contractive, &verdict.reason, &verdict.evidence);
            decorate(&mut doc, "classify", json!({ "p": p.to_string() }));
            Ok(ok(doc))
        }
        RunRequest::Extend { set, n } => {
            let gamma = parse_set(set)?;
            let extended = extensions::extend(&gamma, *n)?;
            Ok(ok(document(
                "extend",
                json!({ "n": n, "set": extended.to_rows() }),
            )))
        }
        RunRequest::Distance { set, lambda } => {
            let gamma = parse_set(set)?;
            let lam = parse_index(lambda)?;
            let d = extensions::distance(&gamma, &lam)?;
            Ok(ok(document(
                "distance",
                json!({ "lambda": lambda, "distance": d }),
            )))
        }
        RunRequest::Complete { set, n, budget } => {
            let gamma = parse_set(set)?;
            let result = extensions::complete(&gamma, *n, &budget.to_budget())?;
            let exit = if result.tag == ClosureTag::Exhausted { 2 } else { 0 };
            let doc = document(
                "complete",
                json!({
                    "n": n,
                    "tag": format!("{:?}", result.tag),
                    "set": result.set.to_rows(),
                    "pair": result.pair.as_ref().map(|(a, b)| json!([a.entries(), b.entries()])),
                    "rounds": result.rounds,
                }),
            );
            Ok(RunOutput { document: doc, exit })
        }
        RunRequest::Coset { set, cap } => {
            let gamma = parse_set(set)?;
            let lat = affine_lattice(&gamma);
            let enumeration = enumerate_orthant(&lat, *cap)?;
            Ok(ok(document(
                "coset",
                json!({
                    "lattice": lattice_json(&lat),
                    "enumeration": {
                        "tag": format!("{:?}", enumeration.tag),
                        "points": enumeration.points.iter().map(|p| p.entries().to_vec()).collect::<Vec<_>>(),
                        "witness": enumeration.witness.as_ref().map(|w| w.entries().to_vec()),
                    },
                }),
            )))
        }
        RunRequest::Witness { set, n, lambda } => {
            let gamma = parse_set(set)?;
            let lam = parse_index(lambda)?;
            let report = witness_search_even(&gamma, *n, &lam, &WitnessGrid::default())?;
            match report {
                Some(r) => Ok(ok(document(
                    "witness",
                    json!({
                        "f": poly_json(&r.f),
                        "lambda": r.lam.entries(),
                        "c": rational_str(&r.c),
                        "p": format!("{}", 2 * r.half_p),
                        "norm_h": rational_str(&r.norm_h),
                        "norm_pf": rational_str(&r.norm_pf),
                        "ratio_p": rational_str(&r.ratio_p),
                        "ratio_p_float": r.ratio_p.to_f64(),
                    }),
                ))),
                None => Err(Error::budget(
                    "witness grid exhausted without an exact certificate",
                )),
            }
        }
        RunRequest::LemmaLine { p, eps } => {
            let p = PExponent::parse(p)?;
            let eps = eps.unwrap_or(1e-2);
            let holds = numerics::verify_line_lemma(&p, eps)?;
            let spec = GridSpec::new(512, 1)?;
            let (left, right) = line_pair_json(&p, eps, &spec)?;
            Ok(ok(document(
                "lemma-line",
                json!({ "p": p.to_string(), "eps": eps, "holds": holds,
                        "left_norm": left, "right_norm": right }),
            )))
        }
        RunRequest::LemmaPlane { p, eps } => {
            let p = PExponent::parse(p)?;
            let eps = eps.unwrap_or(1e-2);
            let holds = numerics::verify_plane_lemma(&p, eps)?;
            Ok(ok(document(
                "lemma-plane",
                json!({ "p": p.to_string(), "eps": eps, "holds": holds }),
            )))
        }
        RunRequest::LemmaInf { alpha, eps } => {
            let alpha = parse_index(alpha)?;
            let eps = eps.unwrap_or(1e-2);
            let holds = numerics::verify_inf_lemma(&alpha, eps)?;
            Ok(ok(document(
                "lemma-inf",
                json!({
                    "alpha": alpha.entries(),
                    "eps": eps,
                    "holds": holds,
                    "right_norm": 2.0 * alpha.dim() as f64,
                }),
            )))
        }
        RunRequest::FigureData {
            set,
            max_distance,
            box_radius,
        } => {
            let gamma = parse_set(set)?;
            figure_data(&gamma, *max_distance, *box_radius)
        }
        RunRequest::Growth { n, p, m_max } => {
            let p = PExponent::parse(p)?;
            let table = tn_growth_table(*n, &p, *m_max)?;
            Ok(ok(document(
                "growth",
                json!({
                    "n": n,
                    "p": p.to_string(),
                    "delta_p": table.delta_p,
                    "note": "lower bounds",
                    "rows": table.rows,
                }),
            )))
        }
        RunRequest::DirichletClassify { set, p } => {
            let p = PExponent::parse(p)?;
            let verdict = bohr::classify_dirichlet_set(set, &p)?;
            Ok(ok(document(
                "dirichlet-classify",
                json!({
                    "p": p.to_string(),
                    "contractive": verdict.contractive,
                    "reason": format!("{:?}", verdict.reason),
                    "evidence": verdict.evidence,
                }),
            )))
        }
        RunRequest::DirichletLift { q } => {
            let q = BigRational::from_str(q)
                .map_err(|_| Error::input(format!("cannot parse rational {q:?}")))?;
            let lifted = bohr::bohr_lift(&q)?;
            Ok(ok(document(
                "dirichlet-lift",
                json!({ "q": rational_str(&q), "index": lifted.entries() }),
            )))
        }
        RunRequest::DirichletOmega { n } => Ok(ok(document(
            "dirichlet-omega",
            json!({ "n": n, "omega": bohr::omega(*n)? }),
        ))),
        RunRequest::DirichletProject { terms, m } => {
            let parsed = terms
                .iter()
                .map(|(n, c)| {
                    let coeff = BigRational::from_str(c)
                        .map_err(|_| Error::input(format!("cannot parse rational {c:?}")))?;
                    Ok((*n, coeff))
                })
                .collect::<Result<Vec<_>>>()?;
            let f = bohr::DirichletPoly::from_terms(parsed)?;
            let projected = bohr::omega_projection(&f, *m)?;
            let rows: Vec<Value> = projected
                .terms()
                .map(|(n, c)| json!([n, rational_str(c)]))
                .collect();
            Ok(ok(document(
                "dirichlet-project",
                json!({ "m": m, "terms": rows }),
            )))
        }
        RunRequest::ReflectionGcd { a, b } => {
            let (g, trace) = reflection_gcd(*a, *b)?;
            Ok(ok(document(
                "reflection-gcd",
                json!({ "a": a, "b": b, "gcd": g, "trace": trace }),
            )))
        }
        RunRequest::VerifyExamples => verify_examples(),
    }
}

fn document(command: &str, mut body: Value) -> Value {
    let obj = body.as_object_mut().expect("body is an object");
    obj.insert("schema".into(), json!("1"));
    obj.insert("command".into(), json!(command));
    body
}

fn decorate(doc: &mut Value, command: &str, extra: Value) {
    let obj = doc.as_object_mut().expect("document is an object");
    obj.insert("schema".into(), json!("1"));
    obj.insert("command".into(), json!(command));
    for (k, v) in extra.as_object().expect("extra is an object") {
        obj.insert(k.clone(), v.clone());
    }
}

fn line_pair_json(p: &PExponent, eps: f64, spec: &GridSpec) -> Result<(Value, Value)> {
    let c_p = match p {
        PExponent::Infinity => -1.0,
        _ => 2.0 / p.as_f64() - 1.0,
    };
    let mut left = LaurentPoly::one(1)?;
    left.insert(
        MultiIndex::new(vec![-1])?,
        BigRational::from_float(c_p * eps).ok_or_else(|| Error::input("bad eps"))?,
    );
    left.insert(
        MultiIndex::new(vec![1])?,
        BigRational::from_float(eps).ok_or_else(|| Error::input("bad eps"))?,
    );
    let mut right = LaurentPoly::one(1)?;
    right.insert(
        MultiIndex::new(vec![1])?,
        BigRational::from_float(eps).ok_or_else(|| Error::input("bad eps"))?,
    );
    let l = lp_norm_estimate(&left, p, spec)?;
    let r = lp_norm_estimate(&right, p, spec)?;
    Ok((
        json!({ "value": l.value, "refined": l.refined, "rel_gap": l.rel_gap }),
        json!({ "value": r.value, "refined": r.refined, "rel_gap": r.rel_gap }),
    ))
}

/// Distance map data: all coset points in the symmetric box with their
/// distances, plus lattice plane coordinates at rank two.
fn figure_data(gamma: &FreqSet, max_distance: u32, box_radius: i64) -> Result<RunOutput> {
    if box_radius < 0 {
        return Err(Error::input("box radius must be nonnegative"));
    }
    let lat = affine_lattice(gamma);
    let lo = vec![-box_radius; gamma.dim()];
    let hi = vec![box_radius; gamma.dim()];
    let points = enumerate_box(&lat, &lo, &hi)?;
    let mut rows = Vec::new();
    for lam in points {
        let Some(d) = extensions::distance(gamma, &lam)? else {
            continue;
        };
        if d > max_distance {
            continue;
        }
        let plane = if lat.rank() == 2 {
            lattice::coordinates(&lat, &lam)?.map(|coords| {
                coords
                    .iter()
                    .map(|c| c.to_i64().unwrap_or(i64::MAX))
                    .collect::<Vec<_>>()
            })
        } else {
            None
        };
        rows.push(json!({
            "lambda": lam.entries(),
            "distance": d,
            "plane": plane,
        }));
    }
    Ok(ok(document(
        "figure-data",
        json!({
            "rank": lat.rank(),
            "base": lat.base().entries(),
            "basis": lat.basis().iter().map(|b| b.entries()).collect::<Vec<_>>(),
            "rows": rows,
        }),
    )))
}

// ---------------------------------------------------------------------------
// Fixture corpus
// ---------------------------------------------------------------------------

/// One check inside a fixture document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
enum Check {
    Extend {
        set: Vec<Vec<i64>>,
        n: u32,
        expect: Vec<Vec<i64>>,
    },
    Enumerate {
        set: Vec<Vec<i64>>,
        expect_tag: String,
        #[serde(default)]
        expect_points: Option<Vec<Vec<i64>>>,
    },
    Classify {
        set: Vec<Vec<i64>>,
        p: String,
        expect_contractive: bool,
        #[serde(default)]
        expect_evidence: Option<Vec<i64>>,
    },
    Distance {
        set: Vec<Vec<i64>>,
        lambda: Vec<i64>,
        expect: Option<u32>,
    },
    Complete {
        set: Vec<Vec<i64>>,
        n: u32,
        expect_tag: String,
        #[serde(default)]
        expect_pair_diff: Option<Vec<i64>>,
    },
    Witness {
        set: Vec<Vec<i64>>,
        n: u32,
        lambda: Vec<i64>,
    },
    Average {
        basis: Vec<Vec<i64>>,
        translate: Vec<i64>,
        poly: Vec<(Vec<i64>, String)>,
        expect: Vec<(Vec<i64>, String)>,
    },
    Annihilator {
        basis: Vec<Vec<i64>>,
        dim: usize,
        expect_orders: Vec<u64>,
        expect_torus_rank: usize,
    },
    ReflectLinear {
        alpha: Vec<i64>,
        beta: Vec<i64>,
        expect: Vec<i64>,
    },
    ReflectTriangular {
        alpha: Vec<i64>,
        beta: Vec<i64>,
        gamma: Vec<i64>,
        expect: Vec<i64>,
    },
    Figure {
        set: Vec<Vec<i64>>,
        #[serde(rename = "box")]
        box_radius: i64,
        max_distance: u32,
        expect_contains: Vec<(Vec<i64>, u32)>,
        #[serde(default)]
        expect_counts: Option<Vec<(u32, usize)>>,
    },
    Restriction {
        d: u32,
        k: u32,
        p: String,
        expect: bool,
    },
    LemmaLine {
        p: String,
        eps: f64,
        expect: bool,
    },
    LemmaPlane {
        p: String,
        eps: f64,
        expect: bool,
    },
    LemmaInf {
        alpha: Vec<i64>,
        eps: f64,
        expect: bool,
    },
    SupNorm {
        poly: Vec<(Vec<i64>, String)>,
        dim: usize,
        expect: f64,
        tol: f64,
    },
    Quadratic {
        p: f64,
        c: f64,
        expect: f64,
        tol: f64,
    },
    Growth {
        n: u32,
        p: String,
    },
    GrowthRefused {
        n: u32,
        p: String,
    },
    DirichletClassify {
        set: Vec<u64>,
        p: String,
        expect_contractive: bool,
        #[serde(default)]
        expect_evidence: Option<u64>,
    },
    DirichletLift {
        q: String,
        expect: Vec<i64>,
    },
    Omega {
        n: u64,
        expect: u32,
    },
    ReflectionGcd {
        a: u64,
        b: u64,
        expect: u64,
        #[serde(default)]
        expect_trace_contains: Option<u64>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Fixture {
    name: String,
    title: String,
    checks: Vec<Check>,
}

fn fixture_corpus() -> &'static [(&'static str, &'static str)] {
    &[
        ("wiener-progression", include_str!("fixtures/wiener-progression.json")),
        ("homogeneous-slice", include_str!("fixtures/homogeneous-slice.json")),
        ("corner-trio", include_str!("fixtures/corner-trio.json")),
        ("symmetric-quad", include_str!("fixtures/symmetric-quad.json")),
        ("skew-quad-family", include_str!("fixtures/skew-quad-family.json")),
        ("skew-quint", include_str!("fixtures/skew-quint.json")),
        ("distance-map", include_str!("fixtures/distance-map.json")),
        ("reflection-map", include_str!("fixtures/reflection-map.json")),
        ("restriction-table", include_str!("fixtures/restriction-table.json")),
        ("lemma-grids", include_str!("fixtures/lemma-grids.json")),
        ("growth-table", include_str!("fixtures/growth-table.json")),
        ("dirichlet-cube", include_str!("fixtures/dirichlet-cube.json")),
    ]
}

fn run_check(check: &Check) -> Result<()> {
    fn expect_eq<T: PartialEq + std::fmt::Debug>(got: T, want: T, what: &str) -> Result<()> {
        if got == want {
            Ok(())
        } else {
            Err(Error::input(format!("{what}: got {got:?}, want {want:?}")))
        }
    }
    match check {
        Check::Extend { set, n, expect } => {
            let got = extensions::extend(&parse_set(set)?, *n)?;
            expect_eq(got, parse_set(expect)?, "extension")
        }
        Check::Enumerate {
            set,
            expect_tag,
            expect_points,
        } => {
            let lat = affine_lattice(&parse_set(set)?);
            let got = enumerate_orthant(&lat, None)?;
            expect_eq(format!("{:?}", got.tag), expect_tag.clone(), "tag")?;
            if let Some(points) = expect_points {
                let want = parse_set(points)?;
                expect_eq(&got.points[..], want.points(), "points")?;
            }
            Ok(())
        }
        Check::Classify {
            set,
            p,
            expect_contractive,
            expect_evidence,
        } => {
            let verdict = extensions::is_contractive_projection_set(
                &parse_set(set)?,
                &PExponent::parse(p)?,
            )?;
            expect_eq(verdict.contractive, *expect_contractive, "contractive")?;
            if let Some(evidence) = expect_evidence {
                expect_eq(
                    verdict.evidence,
                    Some(parse_index(evidence)?),
                    "evidence",
                )?;
            }
            Ok(())
        }
        Check::Distance {
            set,
            lambda,
            expect,
        } => {
            let got = extensions::distance(&parse_set(set)?, &parse_index(lambda)?)?;
            expect_eq(got, *expect, "distance")
        }
        Check::Complete {
            set,
            n,
            expect_tag,
            expect_pair_diff,
        } => {
            let result = extensions::complete(&parse_set(set)?, *n, &Budget::default())?;
            expect_eq(format!("{:?}", result.tag), expect_tag.clone(), "tag")?;
            if let Some(diff) = expect_pair_diff {
                let (a, b) = result
                    .pair
                    .as_ref()
                    .ok_or_else(|| Error::input("expected a certified pair"))?;
                expect_eq(b.sub(a)?, parse_index(diff)?, "pair difference")?;
            }
            Ok(())
        }
        Check::Witness { set, n, lambda } => {
            let report = witness_search_even(
                &parse_set(set)?,
                *n,
                &parse_index(lambda)?,
                &WitnessGrid::default(),
            )?
            .ok_or_else(|| Error::input("witness grid exhausted"))?;
            if report.ratio_p <= BigRational::from_integer(1.into()) {
                return Err(Error::input("witness ratio not above one"));
            }
            Ok(())
        }
        Check::Average {
            basis,
            translate,
            poly,
            expect,
        } => {
            let dim = translate.len();
            let directions = basis
                .iter()
                .map(|b| parse_index(b))
                .collect::<Result<Vec<_>>>()?;
            let lat = AffineLattice::from_generators(MultiIndex::zero(dim)?, &directions)?;
            let dec = annihilator(&lat);
            let f = poly_from_json(dim, poly)?;
            let got = annihilator_average(&dec, &parse_index(translate)?, &f)?;
            expect_eq(got, poly_from_json(dim, expect)?, "average")
        }
        Check::Annihilator {
            basis,
            dim,
            expect_orders,
            expect_torus_rank,
        } => {
            let directions = basis
                .iter()
                .map(|b| parse_index(b))
                .collect::<Result<Vec<_>>>()?;
            let lat = AffineLattice::from_generators(MultiIndex::zero(*dim)?, &directions)?;
            let dec = annihilator(&lat);
            let orders: Vec<u64> = dec
                .finite_part()
                .iter()
                .map(|f| f.order.to_u64().unwrap_or(u64::MAX))
                .collect();
            expect_eq(orders, expect_orders.clone(), "orders")?;
            expect_eq(dec.torus_rank(), *expect_torus_rank, "torus rank")
        }
        Check::ReflectLinear {
            alpha,
            beta,
            expect,
        } => expect_eq(
            extensions::linear_reflection(&parse_index(alpha)?, &parse_index(beta)?)?,
            parse_index(expect)?,
            "linear reflection",
        ),
        Check::ReflectTriangular {
            alpha,
            beta,
            gamma,
            expect,
        } => expect_eq(
            extensions::triangular_reflection(
                &parse_index(alpha)?,
                &parse_index(beta)?,
                &parse_index(gamma)?,
            )?,
            parse_index(expect)?,
            "triangular reflection",
        ),
        Check::Figure {
            set,
            box_radius,
            max_distance,
            expect_contains,
            expect_counts,
        } => {
            let gamma = parse_set(set)?;
            let lat = affine_lattice(&gamma);
            let lo = vec![-box_radius; gamma.dim()];
            let hi = vec![*box_radius; gamma.dim()];
            let mut by_distance = std::collections::BTreeMap::<u32, usize>::new();
            let mut found = std::collections::BTreeMap::<MultiIndex, u32>::new();
            for lam in enumerate_box(&lat, &lo, &hi)? {
                if let Some(d) = extensions::distance(&gamma, &lam)? {
                    if d <= *max_distance {
                        *by_distance.entry(d).or_default() += 1;
                        found.insert(lam, d);
                    }
                }
            }
            for (lambda, d) in expect_contains {
                let lam = parse_index(lambda)?;
                expect_eq(found.get(&lam).copied(), Some(*d), "figure distance")?;
            }
            if let Some(counts) = expect_counts {
                for (d, count) in counts {
                    expect_eq(
                        by_distance.get(d).copied().unwrap_or(0),
                        *count,
                        "figure count",
                    )?;
                }
            }
            Ok(())
        }
        Check::Restriction { d, k, p, expect } => expect_eq(
            extensions::restriction_property(*d, *k, &PExponent::parse(p)?)?,
            *expect,
            "restriction property",
        ),
        Check::LemmaLine { p, eps, expect } => expect_eq(
            numerics::verify_line_lemma(&PExponent::parse(p)?, *eps)?,
            *expect,
            "line verifier",
        ),
        Check::LemmaPlane { p, eps, expect } => expect_eq(
            numerics::verify_plane_lemma(&PExponent::parse(p)?, *eps)?,
            *expect,
            "plane verifier",
        ),
        Check::LemmaInf { alpha, eps, expect } => expect_eq(
            numerics::verify_inf_lemma(&parse_index(alpha)?, *eps)?,
            *expect,
            "sup verifier",
        ),
        Check::SupNorm {
            poly,
            dim,
            expect,
            tol,
        } => {
            let f = poly_from_json(*dim, poly)?;
            let spec = GridSpec::new(512, *dim)?;
            let est = lp_norm_estimate(&f, &PExponent::Infinity, &spec)?;
            if (est.value - expect).abs() <= *tol {
                Ok(())
            } else {
                Err(Error::input(format!(
                    "sup norm {} not within {tol} of {expect}",
                    est.value
                )))
            }
        }
        Check::Quadratic { p, c, expect, tol } => {
            let (fitted, predicted) = quadratic_coefficient_check(*p, *c)?;
            if (fitted - expect).abs() <= *tol && (predicted - expect).abs() <= *tol {
                Ok(())
            } else {
                Err(Error::input(format!(
                    "quadratic fit {fitted} / prediction {predicted} not within {tol} of {expect}"
                )))
            }
        }
        Check::Growth { n, p } => {
            let table = tn_growth_table(*n, &PExponent::parse(p)?, 4)?;
            if table.delta_p > 0.0 {
                Ok(())
            } else {
                Err(Error::input("growth table found no positive defect"))
            }
        }
        Check::GrowthRefused { n, p } => {
            match tn_growth_table(*n, &PExponent::parse(p)?, 4) {
                Err(Error::Input(_)) => Ok(()),
                other => Err(Error::input(format!(
                    "expected refusal, got {other:?}"
                ))),
            }
        }
        Check::DirichletClassify {
            set,
            p,
            expect_contractive,
            expect_evidence,
        } => {
            let verdict = bohr::classify_dirichlet_set(set, &PExponent::parse(p)?)?;
            expect_eq(verdict.contractive, *expect_contractive, "contractive")?;
            if let Some(evidence) = expect_evidence {
                expect_eq(verdict.evidence, Some(*evidence), "evidence")?;
            }
            Ok(())
        }
        Check::DirichletLift { q, expect } => {
            let q = BigRational::from_str(q)
                .map_err(|_| Error::input(format!("cannot parse rational {q:?}")))?;
            expect_eq(bohr::bohr_lift(&q)?, parse_index(expect)?, "lift")
        }
        Check::Omega { n, expect } => expect_eq(bohr::omega(*n)?, *expect, "omega"),
        Check::ReflectionGcd {
            a,
            b,
            expect,
            expect_trace_contains,
        } => {
            let (g, trace) = reflection_gcd(*a, *b)?;
            expect_eq(g, *expect, "gcd")?;
            if let Some(value) = expect_trace_contains {
                if !trace.iter().any(|(x, y)| x == value || y == value) {
                    return Err(Error::input(format!(
                        "trace {trace:?} does not contain {value}"
                    )));
                }
            }
            Ok(())
        }
    }
}

/// Replay the fixture corpus and report one pass/fail line per fixture.
pub fn verify_examples() -> Result<RunOutput> {
    let mut fixtures_json = Vec::new();
    let mut all_passed = true;
    for (name, source) in fixture_corpus() {
        let fixture: Fixture = serde_json::from_str(source)
            .map_err(|e| Error::input(format!("fixture {name}: {e}")))?;
        let mut checks_json = Vec::new();
        let mut passed = true;
        for (i, check) in fixture.checks.iter().enumerate() {
            let outcome = run_check(check);
            let check_passed = outcome.is_ok();
            passed &= check_passed;
            checks_json.push(json!({
                "index": i,
                "passed": check_passed,
                "detail": outcome.err().map(|e| e.to_string()),
            }));
        }
        all_passed &= passed;
        fixtures_json.push(json!({
            "fixture": fixture.name,
            "title": fixture.title,
            "passed": passed,
            "checks": checks_json,
        }));
    }
    let doc = document(
        "verify-examples",
        json!({ "fixtures": fixtures_json, "all_passed": all_passed }),
    );
    Ok(RunOutput {
        document: doc,
        exit: if all_passed { 0 } else { 1 },
    })
}
