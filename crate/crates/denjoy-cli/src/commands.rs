//! Subcommand implementations. Each builds the requested objects from the
//! action document, runs the core computation, and assembles a `Report`.

use std::collections::BTreeMap;

use denjoy_core::ergodic::{
    self, in_trace_ideal, rotation_number_estimate, trace, Decision,
    InvariantMeasure, LiftIterator,
};
use denjoy_core::expr::{parse_real, render_real};
use denjoy_core::interval::decimal_of_rational;
use denjoy_core::ktheory::{
    ideal_k_data, is_zero_pairing, k_groups, positivity, trace_pairing, BasisLabel, IntMatrix, TorusTheta,
};
use denjoy_core::prim::{closure, ideal_for_open, maximal_ideal, OrbitCount, PrimSpace};
use denjoy_core::realize::GapTable;
use denjoy_core::{
    ActionClass, DenjoyAction, Error, Real, Resources,
    RotationVector,
};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::report::Report;
use crate::spec_file::{ActionSpecDocument, ResourceOverrides};
use crate::syntax;

pub const DECIMAL_DIGITS: u32 = 30;

fn decimal(x: &Real) -> String {
    x.decimal(DECIMAL_DIGITS)
        .unwrap_or_else(|| format!("~{}", x.eval(64).to_f64()))
}

fn interval_json(iv: &denjoy_core::BigInterval) -> Value {
    json!({
        "lo": decimal_of_rational(iv.lo(), DECIMAL_DIGITS),
        "hi": decimal_of_rational(iv.hi(), DECIMAL_DIGITS),
        "width_log2": iv.width_log2(),
    })
}

fn spec_inputs(doc: &ActionSpecDocument, res: &Resources) -> Result<Value, Error> {
    Ok(json!({
        "action": doc.to_canonical_string()?,
        "precision_bits": res.precision_bits,
        "max_precision_bits": res.max_precision_bits,
        "enum_budget": res.enum_budget,
    }))
}

fn independence_json(action: &DenjoyAction) -> Value {
    match action.rotation_vector().independence() {
        denjoy_core::action::Independence::Independent => {
            json!({"independent": true, "method": "exact surd-coordinate rank"})
        }
        denjoy_core::action::Independence::Dependent { witness } => json!({
            "independent": false,
            "witness": witness.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        }),
    }
}

pub fn cmd_classify(
    doc: &ActionSpecDocument,
    overrides: &ResourceOverrides,
) -> Result<Report, Error> {
    let res = doc.resources(overrides);
    let action = doc.build()?;
    let class = action.classify();
    let mut outputs = json!({
        "class": class.to_string(),
        "rho_image_finite": action.rotation_vector().all_rational(),
    });
    if class == ActionClass::Denjoy {
        let report = action.wandering_orbit_reps()?;
        outputs["orbit_count"] = json!(report.orbit_count);
        outputs["representatives"] = json!(report
            .representatives
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>());
    }
    Ok(Report::new(
        "classify",
        spec_inputs(doc, &res)?,
        outputs,
        json!({"independence": independence_json(&action)}),
    ))
}

pub fn cmd_rho(
    doc: &ActionSpecDocument,
    g_text: &str,
    estimate: Option<u64>,
    overrides: &ResourceOverrides,
) -> Result<Report, Error> {
    let res = doc.resources(overrides);
    let action = doc.build()?;
    let g = syntax::parse_vector(g_text, action.dim())?;
    let value = ergodic::rotation_number(&action, &g)?;
    let mut outputs = json!({
        "g": syntax::render_vector(&g),
        "exact": render_real(value.value()),
        "decimal": decimal(value.value()),
    });
    let mut certificates = json!({
        "precision_bits": res.precision_bits,
        "independence": independence_json(&action),
    });
    if let Some(n) = estimate {
        let it = LiftIterator::anchored(&action, g.clone())?;
        let est = rotation_number_estimate(&action, it, n, &res)?;
        let exact_iv = value.value().eval(res.precision_bits);
        let gap_hi = est.enclosure.hi() - exact_iv.lo();
        let gap_lo = exact_iv.hi() - est.enclosure.lo();
        outputs["estimate"] = json!({
            "iterations": n,
            "estimate": interval_json(&est.estimate),
            "enclosure": interval_json(&est.enclosure),
            "encloses_exact": est.enclosure.contains(exact_iv.lo())
                && est.enclosure.contains(exact_iv.hi()),
        });
        certificates["estimate_gap"] = json!({
            "upper_slack": decimal_of_rational(&gap_hi, DECIMAL_DIGITS),
            "lower_slack": decimal_of_rational(&gap_lo, DECIMAL_DIGITS),
        });
    }
    Ok(Report::new(
        "rho",
        json!({
            "action": doc.to_canonical_string()?,
            "g": syntax::render_vector(&g),
            "estimate": estimate,
            "precision_bits": res.precision_bits,
        }),
        outputs,
        certificates,
    ))
}

pub fn cmd_act(
    doc: &ActionSpecDocument,
    g_text: &str,
    point_text: &str,
    overrides: &ResourceOverrides,
) -> Result<Report, Error> {
    let res = doc.resources(overrides);
    let action = doc.build()?;
    let g = syntax::parse_vector(g_text, action.dim())?;
    let mut table = None;
    let p = syntax::parse_point(point_text, &action, &mut table, &res)?;
    let image = action.act(&g, &p)?;
    let mut outputs = json!({
        "point": syntax::render_point(&p),
        "image": syntax::render_point(&image),
    });
    if action.is_denjoy() {
        outputs["semiconjugacy_of_image"] =
            json!(render_real(action.semiconjugacy(&image)?.value()));
    }
    Ok(Report::new(
        "act",
        json!({
            "action": doc.to_canonical_string()?,
            "g": syntax::render_vector(&g),
            "point": point_text,
        }),
        outputs,
        json!({"precision_bits": res.precision_bits}),
    ))
}

pub fn cmd_measure(
    doc: &ActionSpecDocument,
    from_text: &str,
    to_text: Option<&str>,
    g_text: Option<&str>,
    overrides: &ResourceOverrides,
) -> Result<Report, Error> {
    let res = doc.resources(overrides);
    let action = doc.build()?;
    let mu = InvariantMeasure::new(&action)?;
    let mut table = None;
    let from = syntax::parse_point(from_text, &action, &mut table, &res)?;
    let (to, arc_desc) = match (to_text, g_text) {
        (Some(t), None) => (
            syntax::parse_point(t, &action, &mut table, &res)?,
            format!("({from_text}, {t}]"),
        ),
        (None, Some(gt)) => {
            let g = syntax::parse_vector(gt, action.dim())?;
            (
                action.act(&g, &from)?,
                format!("({from_text}, {}.{from_text}]", syntax::render_vector(&g)),
            )
        }
        _ => {
            return Err(Error::Invalid(
                "measure needs exactly one of --to or --g".into(),
            ))
        }
    };
    let value = mu.measure_between(&from, &to)?;
    let outputs = if value.is_exact() {
        json!({
            "arc": arc_desc,
            "exact": render_real(&value),
            "decimal": decimal(&value),
        })
    } else {
        json!({
            "arc": arc_desc,
            "enclosure": interval_json(&value.eval(res.precision_bits)),
        })
    };
    Ok(Report::new(
        "measure",
        json!({
            "action": doc.to_canonical_string()?,
            "from": from_text,
            "to": to_text,
            "g": g_text,
            "precision_bits": res.precision_bits,
        }),
        outputs,
        json!({
            "exact": value.is_exact(),
            "precision_bits": res.precision_bits,
        }),
    ))
}

pub fn cmd_trace(
    doc: &ActionSpecDocument,
    terms: &[String],
    ideal_test: bool,
    overrides: &ResourceOverrides,
) -> Result<Report, Error> {
    let res = doc.resources(overrides);
    let action = doc.build()?;
    let element = syntax::element_from_terms(&action, terms)?;
    let value = trace(&action, &element)?;
    let mut outputs = json!({
        "trace_re": render_real(&value.re),
        "trace_im": render_real(&value.im),
        "decimal_re": decimal(&value.re),
        "decimal_im": decimal(&value.im),
    });
    if ideal_test {
        let decision = in_trace_ideal(&action, &element)?;
        outputs["in_trace_ideal"] = json!(match decision {
            Decision::Yes => "Yes",
            Decision::No => "No",
            Decision::Undecided => "Undecided",
        });
    }
    Ok(Report::new(
        "trace",
        json!({
            "action": doc.to_canonical_string()?,
            "terms": terms,
            "ideal_test": ideal_test,
        }),
        outputs,
        json!({"exact": true, "precision_bits": res.precision_bits}),
    ))
}

fn label_from_text(text: &str) -> Result<BasisLabel, Error> {
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    if inner.trim().is_empty() {
        return BasisLabel::new(vec![]);
    }
    let indices = inner
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::BadLabel(format!("bad index {p:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    BasisLabel::new(indices)
}

fn matrix_json(m: &IntMatrix) -> Value {
    let rows: Vec<Vec<i64>> = (0..m.rows)
        .map(|r| (0..m.cols).map(|c| m.get(r, c)).collect())
        .collect();
    json!(rows)
}

/// K-theory report for a rotation vector: ranks, labelled bases, index
/// maps, trace pairing per `K_0` label, range subgroup, order samples.
pub fn cmd_ktheory(
    doc: Option<&ActionSpecDocument>,
    d_flag: Option<usize>,
    gamma_flags: &[String],
    pairs: &[String],
    overrides: &ResourceOverrides,
) -> Result<Report, Error> {
    let (rotation, inputs, res) = match (doc, d_flag) {
        (Some(doc), None) => {
            let res = doc.resources(overrides);
            let action = doc.build()?;
            (
                action.rotation_vector().clone(),
                json!({"action": doc.to_canonical_string()?}),
                res,
            )
        }
        (None, Some(d)) => {
            if gamma_flags.len() != d {
                return Err(Error::Invalid(format!(
                    "--d {d} needs exactly {d} --gamma flags"
                )));
            }
            let gammas = gamma_flags
                .iter()
                .map(|g| parse_real(g))
                .collect::<Result<Vec<_>, _>>()?;
            (
                RotationVector::new(gammas)?,
                json!({"d": d, "gamma": gamma_flags}),
                overrides.apply(Resources::default()),
            )
        }
        _ => {
            return Err(Error::Invalid(
                "ktheory needs either --spec or --d with --gamma".into(),
            ))
        }
    };
    let d = rotation.dim();
    let theta = TorusTheta::new(rotation.clone());
    let (k0, k1, steps) = k_groups(d)?;
    let theta_rows: Vec<Vec<String>> = theta
        .materialize()
        .rows()
        .iter()
        .map(|row| row.iter().map(render_real).collect())
        .collect();
    let mut pairings = Vec::new();
    for label in &k0.labels {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(label.clone(), BigInt::from(1));
        let pairing = trace_pairing(&theta, &coeffs)?;
        pairings.push(json!({
            "label": label.to_string(),
            "formal": pairing.formal.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
            "exact": render_real(&pairing.value),
            "decimal": decimal(&pairing.value),
        }));
    }
    let steps_json: Vec<Value> = steps
        .iter()
        .map(|s| {
            json!({
                "step": s.step,
                "inclusion0": matrix_json(&s.inclusion0),
                "inclusion1": matrix_json(&s.inclusion1),
                "delta0": matrix_json(&s.delta0),
                "delta1": matrix_json(&s.delta1),
            })
        })
        .collect();
    // Deterministic order samples over the trace pairing.
    let mut order_samples = Vec::new();
    let mut sample_vectors = vec![
        vec![BigInt::from(1)],
        vec![BigInt::from(0)],
        vec![BigInt::from(-1)],
    ];
    for v in sample_vectors.iter_mut() {
        v.resize(d + 1, BigInt::from(0));
    }
    sample_vectors.push({
        // 1 - gamma_1: positive since gamma_1 < 1.
        let mut v = vec![BigInt::from(1), BigInt::from(-1)];
        v.resize(d + 1, BigInt::from(0));
        v
    });
    for v in &sample_vectors {
        let sign = positivity(&rotation, v, &res)?;
        order_samples.push(json!({
            "formal": v.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
            "sign": format!("{sign:?}"),
        }));
    }
    // User-requested pairings: LABEL=COEFF(;LABEL=COEFF)*.
    let mut requested = Vec::new();
    for spec in pairs {
        let mut coeffs: BTreeMap<BasisLabel, BigInt> = BTreeMap::new();
        for part in spec.split(';') {
            let kv: Vec<&str> = part.rsplitn(2, '=').collect();
            if kv.len() != 2 {
                return Err(Error::Invalid(format!(
                    "bad pairing {part:?}: expected label=coefficient"
                )));
            }
            let label = label_from_text(kv[1])?;
            let coeff: BigInt = kv[0]
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad coefficient {:?}", kv[0])))?;
            *coeffs.entry(label).or_default() += coeff;
        }
        let pairing = trace_pairing(&theta, &coeffs)?;
        let zero = is_zero_pairing(&rotation, &pairing.formal, &res)?;
        requested.push(json!({
            "element": spec,
            "formal": pairing.formal.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
            "exact": render_real(&pairing.value),
            "decimal": decimal(&pairing.value),
            "zero_test": format!("{zero:?}"),
            "positivity": format!("{:?}", positivity(&rotation, &pairing.formal, &res)?),
        }));
    }
    let range = {
        let mut parts = vec!["Z".to_string()];
        for i in 1..=d {
            parts.push(format!("gamma_{i} Z"));
        }
        parts.join(" + ")
    };
    let outputs = json!({
        "d": d,
        "k0_rank": k0.rank(),
        "k1_rank": k1.rank(),
        "k0_labels": k0.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "k1_labels": k1.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "theta": theta_rows,
        "pv_steps": steps_json,
        "trace_pairing": pairings,
        "trace_range": range,
        "order_samples": order_samples,
        "requested_pairings": requested,
        "label_convention":
            "basis labels are subsets of {1, ..., d+1}; index 1 is the circle \
             generator, index i+1 the i-th group generator",
    });
    Ok(Report::new(
        "ktheory",
        inputs,
        outputs,
        json!({
            "precision_bits": res.precision_bits,
            "independence": match rotation.independence() {
                denjoy_core::action::Independence::Independent =>
                    json!({"independent": true}),
                denjoy_core::action::Independence::Dependent { witness } => json!({
                    "independent": false,
                    "witness": witness.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                }),
            },
        }),
    ))
}

/// Prim-space queries: closures, ideals of open sets, the maximal ideal.
pub fn cmd_prim(
    doc: Option<&ActionSpecDocument>,
    k_flag: Option<&str>,
    closure_of: Option<&str>,
    ideal_of: Option<&str>,
    maximal: bool,
) -> Result<Report, Error> {
    let (space, inputs) = match (doc, k_flag) {
        (Some(doc), None) => {
            let action = doc.build()?;
            if !action.is_denjoy() {
                return Err(Error::DenjoyActionRequired);
            }
            let k = OrbitCount::Finite(action.orbit_count() as u64);
            (
                PrimSpace::new(k)?,
                json!({"action": doc.to_canonical_string()?, "k": k.to_string()}),
            )
        }
        (None, Some(k_text)) => {
            let k = if k_text == "inf" || k_text == "oo" {
                OrbitCount::Infinite
            } else {
                OrbitCount::Finite(k_text.parse::<u64>().map_err(|_| {
                    Error::Invalid(format!("bad orbit count {k_text:?}"))
                })?)
            };
            (PrimSpace::new(k)?, json!({"k": k.to_string()}))
        }
        _ => {
            return Err(Error::Invalid(
                "prim needs either --spec or --k".into(),
            ))
        }
    };
    let mut outputs = json!({
        "space": format!("{} interval component(s) plus the dense point J", space.k),
        "j_neighbourhood":
            "the only open set containing J is the whole space: J lies in \
             the closure of every non-empty set, in particular of any \
             non-empty complement",
    });
    if let Some(text) = closure_of {
        let s = syntax::parse_subset(text, &space)?;
        let c = closure(&space, &s);
        outputs["closure"] = json!({
            "of": s.to_string(),
            "is": c.to_string(),
            "contains_j": c.contains_j,
        });
    }
    if let Some(text) = ideal_of {
        let u = syntax::parse_subset(text, &space)?;
        let descriptor = ideal_for_open(&space, &u)?;
        outputs["ideal"] = json!({
            "open_set": descriptor.open_set.to_string(),
            "kind": format!("{:?}", descriptor.kind),
            "within_trace_ideal": descriptor.within_trace_ideal,
            "invariant_open_set": descriptor.invariant_open_set,
        });
    }
    if maximal {
        let report = maximal_ideal(&space)?;
        let kd = ideal_k_data(space.k)?;
        outputs["maximal_ideal"] = json!({
            "structure": kd.structure,
            "unique_maximal": report.unique_maximal,
            "summands": report.summands.to_string(),
            "k0": if kd.k0_trivial { "0" } else { "?" },
            "k1_rank": kd.k1_rank.to_string(),
            "index_map_vanishes": kd.index_map_vanishes,
            "membership_test": report.membership_test,
        });
    }
    Ok(Report::new(
        "prim",
        json!({
            "space": inputs,
            "closure": closure_of,
            "ideal": ideal_of,
            "maximal": maximal,
        }),
        outputs,
        json!({}),
    ))
}

/// Re-canonicalizes a stored report.
pub fn cmd_export(bytes: &[u8]) -> Result<(Report, Vec<u8>), Error> {
    let report = Report::parse(bytes)?;
    let canonical = report.canonical_bytes();
    Ok((report, canonical))
}

/// Where realization tables are needed across commands, build one per
/// invocation and share it.
pub fn build_table(action: &DenjoyAction, res: &Resources) -> Result<GapTable, Error> {
    GapTable::build(action, res.precision_bits, res.enum_budget)
}
