use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::{json, Map, Value};

use super::config::{CheckKind, JobConfig};
use crate::error::{Error, Result};
use crate::iso_map::{self, monomial_name, Check, Dossier, IsoResult, ScalingReport, Witness};
use crate::linalg::{Matrix, Vector};
use crate::polytope::{FacetLabel, FacetOrbitData, NormalScaling, QuotientPolytope, WPolytope};
use crate::root_weyl::{CartanType, RootSystem, WeylGroup};
use crate::scalar::Scalar;
use crate::sr_algebra::{FaceComplex, GradedAlgebra, LabelPerm};

pub const ENGINE_NAME: &str = "wtoric";
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Adds wall-clock timings, which makes the output non-reproducible.
    pub timings: bool,
}

/// A finished run: the JSON document and the per-check verdicts.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub checks: BTreeMap<CheckKind, bool>,
    pub errors: Vec<(String, String)>,
}

impl Report {
    /// True iff every requested check passed.
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.values().all(|&b| b)
    }

    pub fn to_pretty(&self) -> String {
        pretty(&self.json)
    }
}

/// The objects a run computed, for callers that want more than JSON.
pub struct Artifacts {
    pub cartan: CartanType,
    pub root_system: RootSystem,
    pub group: WeylGroup,
    pub polytope: Option<WPolytope>,
    pub algebra: Option<GradedAlgebra>,
    pub iso: Option<IsoResult>,
    pub scaling: Option<ScalingReport>,
}

pub fn run(config: &JobConfig, options: &RunOptions) -> Result<Report> {
    execute(config, options).map(|(r, _)| r)
}

/// Runs the requested checks. Config problems are returned as errors; failures
/// after the root system is built are embedded in the report instead.
pub fn execute(config: &JobConfig, options: &RunOptions) -> Result<(Report, Artifacts)> {
    let (cartan, coords) = config.validate()?;
    let cap = config.rank_cap()?;
    let rs = RootSystem::build(cartan, cap)?;
    let w = WeylGroup::generate(&rs)?;
    let d = rs.discriminant();
    let checks = config.expanded_checks();
    let k = config.k_zero_based();

    let mut doc = Map::new();
    let mut errors: Vec<(String, String)> = Vec::new();
    let mut verdicts: BTreeMap<CheckKind, bool> = BTreeMap::new();
    let mut timings = Map::new();
    let mut clock = Instant::now();
    let mut lap = |timings: &mut Map<String, Value>, stage: &str| {
        if options.timings {
            timings.insert(stage.into(), json!(clock.elapsed().as_secs_f64() * 1e3));
            clock = Instant::now();
        }
    };

    doc.insert("engine".into(), json!({ "name": ENGINE_NAME, "version": ENGINE_VERSION }));
    doc.insert(
        "field".into(),
        json!({
            "d": d,
            "scalars": if d == 1 { "\"p/q\"" } else { "[a, b] meaning a + b*sqrt(d)" },
        }),
    );
    doc.insert("config".into(), config.to_json());
    doc.insert(
        "root_system".into(),
        json!({
            "type": cartan.to_string(),
            "rank": rs.rank(),
            "crystallographic": rs.is_crystallographic(),
            "gram": matrix_json(rs.gram.matrix(), d),
            "num_roots": rs.roots.len(),
            "weyl_order": w.order(),
        }),
    );

    let mut arts = Artifacts {
        cartan,
        root_system: rs,
        group: w,
        polytope: None,
        algebra: None,
        iso: None,
        scaling: None,
    };
    let rs = &arts.root_system;
    let w = &arts.group;

    let built = config
        .scaling()
        .and_then(|s| Ok((s, config.lambda_vectors(rs, &coords)?)))
        .and_then(|(s, lambda)| WPolytope::build(rs, w, &lambda, s));
    lap(&mut timings, "polytope");
    let p = match built {
        Ok(p) => p,
        Err(e) => {
            errors.push(("polytope".into(), e.to_string()));
            for c in &checks {
                verdicts.insert(*c, false);
            }
            return Ok((finish(doc, verdicts, errors, timings, options), arts));
        }
    };
    doc.insert("polytope".into(), polytope_json(&p, w, d));
    if checks.contains(&CheckKind::Classify) {
        verdicts.insert(CheckKind::Classify, true);
    }

    let out_of_scope = !p.classification.nondegenerate && p.rank >= 3 && !config.force_degenerate;
    let experimental = !p.classification.nondegenerate && p.rank >= 3;
    if experimental {
        doc.insert("experimental".into(), json!(true));
    }
    let needs_algebra = checks.iter().any(|c| *c != CheckKind::Classify);
    let algebra = if !needs_algebra {
        None
    } else if out_of_scope {
        errors.push(("algebra".into(), Error::DegenerateOutOfScope(p.rank).to_string()));
        None
    } else {
        match GradedAlgebra::build(FaceComplex::from_polytope(&p)) {
            Ok(a) => Some(a),
            Err(e) => {
                errors.push(("algebra".into(), e.to_string()));
                None
            }
        }
    };
    lap(&mut timings, "algebra");

    let mut presentations = Map::new();
    if let Some(a) = &algebra {
        presentations.insert("polytope".into(), presentation_json(a, d));
        if checks.contains(&CheckKind::Algebra) {
            let (block, ok) = structure_json(a, &p, w);
            doc.insert("structure".into(), block);
            verdicts.insert(CheckKind::Algebra, ok);
            lap(&mut timings, "structure");
        }
        if checks.contains(&CheckKind::Characters) {
            match characters_json(a, &p, w, rs, d) {
                Ok((block, ok)) => {
                    doc.insert("characters".into(), block);
                    verdicts.insert(CheckKind::Characters, ok);
                }
                Err(e) => {
                    errors.push(("characters".into(), e.to_string()));
                    verdicts.insert(CheckKind::Characters, false);
                }
            }
            lap(&mut timings, "characters");
        }
        if checks.contains(&CheckKind::Iso) {
            match iso_map::run_iso(rs, w, &p, a, &k) {
                Ok(iso) => {
                    doc.insert("facet_orbits".into(), orbits_json(&iso.orbits, w));
                    doc.insert("quotient".into(), quotient_json(&iso.quotient, &p, d));
                    presentations.insert("quotient".into(), presentation_json(&iso.quotient_algebra, d));
                    doc.insert("c_coefficients".into(), coefficients_json(&iso, w, d));
                    doc.insert("dossier".into(), dossier_json(&iso, a, d));
                    let transfer = crate::polytope::simplicity_transfer_check(&p, &iso.quotient);
                    let ok = iso.dossier.all_passed() && iso.coefficients.all_hold() && transfer;
                    verdicts.insert(CheckKind::Iso, ok);
                    arts.iso = Some(iso);
                }
                Err(e) => {
                    errors.push(("iso".into(), e.to_string()));
                    verdicts.insert(CheckKind::Iso, false);
                }
            }
            lap(&mut timings, "iso");
        }
        if checks.contains(&CheckKind::Scaling) {
            match scaling_check(rs, w, &p, &coords, &k) {
                Ok((report, block)) => {
                    verdicts.insert(CheckKind::Scaling, report.passed() && block["lattice_normals_match"] != false);
                    doc.insert("scaling".into(), scaling_json(&report, block, d));
                    arts.scaling = Some(report);
                }
                Err(e) => {
                    errors.push(("scaling".into(), e.to_string()));
                    verdicts.insert(CheckKind::Scaling, false);
                }
            }
            lap(&mut timings, "scaling");
        }
    }
    for c in &checks {
        verdicts.entry(*c).or_insert(false);
    }
    if !presentations.is_empty() {
        doc.insert("presentations".into(), Value::Object(presentations));
    }
    arts.algebra = algebra;
    arts.polytope = Some(p);
    Ok((finish(doc, verdicts, errors, timings, options), arts))
}

fn finish(
    mut doc: Map<String, Value>,
    checks: BTreeMap<CheckKind, bool>,
    errors: Vec<(String, String)>,
    timings: Map<String, Value>,
    options: &RunOptions,
) -> Report {
    let check_map: Map<String, Value> = checks.iter().map(|(c, b)| (c.name().to_string(), json!(b))).collect();
    doc.insert("checks".into(), Value::Object(check_map));
    doc.insert(
        "errors".into(),
        Value::Array(errors.iter().map(|(s, m)| json!({ "stage": s, "message": m })).collect()),
    );
    if options.timings {
        doc.insert("timings_ms".into(), Value::Object(timings));
    }
    let report = Report { json: Value::Null, checks, errors };
    let passed = report.passed();
    doc.insert("passed".into(), json!(passed));
    Report { json: Value::Object(doc), ..report }
}

/// Pretty JSON with a trailing newline.
pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

pub(crate) fn scalar_json(x: &Scalar, d: u32) -> Value {
    x.to_json(d)
}

pub(crate) fn vector_json(v: &Vector, d: u32) -> Value {
    Value::Array(v.iter().map(|x| x.to_json(d)).collect())
}

pub(crate) fn matrix_json(m: &Matrix, d: u32) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|x| x.to_json(d)).collect())).collect())
}

fn polytope_json(p: &WPolytope, w: &WeylGroup, d: u32) -> Value {
    let facets: Vec<Value> = p
        .facets
        .iter()
        .enumerate()
        .map(|(i, f)| {
            json!({
                "label": format!("F{i}"),
                "orbit": f.orbit,
                "word": w.element(f.word).word_string(),
                "normal": vector_json(&f.normal, d),
                "functional": vector_json(&f.functional, d),
                "offset": scalar_json(&f.offset, d),
                "vertices": f.vertices,
            })
        })
        .collect();
    json!({
        "coordinates": "simple-root basis",
        "lambda": p.lambda.iter().map(|v| vector_json(v, d)).collect::<Vec<_>>(),
        "normal_scaling": p.scaling.name(),
        "num_vertices": p.vertices.len(),
        "num_facets": p.num_facets(),
        "vertices": p.vertices.iter().map(|v| vector_json(v, d)).collect::<Vec<_>>(),
        "facets": facets,
        "vertex_facets": p.vertex_facets,
        "orbit_reps": p.orbit_reps,
        "classification": {
            "nondegenerate": p.classification.nondegenerate,
            "simple": p.classification.simple,
            "flag": p.classification.flag,
        },
    })
}

fn presentation_json(a: &GradedAlgebra, d: u32) -> Value {
    let fc = &a.complex;
    let gens: Vec<Value> = fc
        .minimal_non_faces()
        .iter()
        .map(|m| {
            let mut e = vec![0u32; fc.num_labels()];
            for &l in m {
                e[l as usize] += 1;
            }
            json!(e)
        })
        .collect();
    let named: Vec<String> = fc.minimal_non_faces().iter().map(|m| monomial_name(fc, m)).collect();
    let basis: Vec<Vec<String>> =
        (0..=a.rank()).map(|k| a.basis_monomials(k).iter().map(|m| monomial_name(fc, m)).collect()).collect();
    json!({
        "variables": fc.labels,
        "grading": "algebraic degree d (topological degree 2d)",
        "sr_generators": gens,
        "sr_generators_named": named,
        "linear_forms": matrix_json(&a.forms, d),
        "f_vector": fc.f_vector(),
        "h_vector": a.h,
        "dims": a.dims(),
        "basis": basis,
        "top_monomial": monomial_name(fc, a.top_monomial()),
    })
}

fn structure_json(a: &GradedAlgebra, p: &WPolytope, w: &WeylGroup) -> (Value, bool) {
    let n = a.rank();
    let hilbert = a.dims().iter().zip(&a.h).all(|(&x, &h)| x as i64 == h);
    let palindromic = (0..=n).all(|i| a.h[i] == a.h[n - i]);
    let pd = a.pd_check();
    let vertices = a.vertex_monomial_consistency();
    let top = (0..w.order()).all(|g| a.acts_trivially_on_top(p.facet_perm(g)));
    let relations = a.relations_propagate();
    let ok = hilbert && palindromic && pd && vertices && top && relations;
    (
        json!({
            "hilbert_matches_h": hilbert,
            "h_palindromic": palindromic,
            "poincare_pairing_full_rank": pd,
            "vertex_monomials_positive": vertices,
            "group_trivial_on_top": top,
            "relations_propagate": relations,
        }),
        ok,
    )
}

/// Graded character on conjugacy class representatives plus consistency checks.
pub(crate) fn characters_json(
    a: &GradedAlgebra,
    p: &WPolytope,
    w: &WeylGroup,
    rs: &RootSystem,
    d: u32,
) -> Result<(Value, bool)> {
    let classes = w.conjugacy_classes();
    let mut rows = Vec::new();
    let mut total = vec![Scalar::zero(); a.rank() + 1];
    let mut class_functions = true;
    let mut integral = true;
    for class in &classes {
        let rep = class[0];
        let chi = a.graded_character(p.facet_perm(rep))?;
        let last = *class.last().expect("nonempty");
        if last != rep && a.graded_character(p.facet_perm(last))? != chi {
            class_functions = false;
        }
        integral &= chi.iter().all(Scalar::is_integer);
        for (t, x) in total.iter_mut().zip(&chi) {
            *t += &(x * &Scalar::from_int(class.len() as i64));
        }
        rows.push(json!({
            "representative": w.element(rep).word_string(),
            "size": class.len(),
            "traces": chi.iter().map(|x| x.to_json(d)).collect::<Vec<_>>(),
        }));
    }
    let gens: Vec<LabelPerm> = (0..rs.rank()).map(|i| p.facet_perm(w.generator(i)).to_vec()).collect();
    let mut simple = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let chi = a.graded_character(g)?;
        simple.push(json!({
            "element": format!("r{}", i + 1),
            "traces": chi.iter().map(|x| x.to_json(d)).collect::<Vec<_>>(),
        }));
    }
    let mut invariant_dims = Vec::new();
    for deg in 0..=a.rank() {
        invariant_dims.push(a.invariant_basis(&gens, deg)?.len());
    }
    let order = Scalar::from_int(w.order() as i64);
    let burnside = invariant_dims.iter().zip(&total).all(|(&m, t)| &Scalar::from_int(m as i64) * &order == *t);
    let required = rs.is_crystallographic() && p.classification.nondegenerate;
    let ok = class_functions && burnside && (integral || !required);
    Ok((
        json!({
            "classes": rows,
            "simple_reflections": simple,
            "integral": integral,
            "integrality_expected": required,
            "class_function": class_functions,
            "invariant_dims": invariant_dims,
            "burnside": burnside,
        }),
        ok,
    ))
}

fn orbits_json(fo: &FacetOrbitData, w: &WeylGroup) -> Value {
    let reps: Vec<Value> = fo
        .reps
        .iter()
        .enumerate()
        .map(|(r, &f)| {
            json!({
                "facet": format!("F{f}"),
                "stabilizer_order": fo.stabilizers[r].order(),
                "cosets": fo.cosets[r].iter().map(|&s| w.element(s).word_string()).collect::<Vec<_>>(),
                "orbit": fo.facet_of[r].iter().map(|f| format!("F{f}")).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "K": fo.k.iter().map(|k| k + 1).collect::<Vec<_>>(),
        "subgroup_order": fo.subgroup.order(),
        "representatives": reps,
        "stabilizers_parabolic": fo.stabilizers_parabolic,
    })
}

fn quotient_json(q: &QuotientPolytope, p: &WPolytope, d: u32) -> Value {
    let facets: Vec<Value> = q
        .facets
        .iter()
        .map(|f| {
            let label = match f.label {
                FacetLabel::X(i) => format!("X{i}"),
                FacetLabel::Y(k) => format!("Y{}", k + 1),
            };
            json!({
                "label": label,
                "functional": vector_json(&f.functional, d),
                "offset": scalar_json(&f.offset, d),
                "vertices": f.vertices,
            })
        })
        .collect();
    json!({
        "num_vertices": q.vertices.len(),
        "vertices": q.vertices.iter().map(|v| vector_json(v, d)).collect::<Vec<_>>(),
        "facets": facets,
        "vertex_facets": q.vertex_facets,
        "simple": q.is_simple(),
        "flag": q.is_flag(),
        "simplicity_transfer": crate::polytope::simplicity_transfer_check(p, q),
    })
}

fn coefficients_json(iso: &IsoResult, w: &WeylGroup, d: u32) -> Value {
    let fo = &iso.orbits;
    let cc = &iso.coefficients;
    let mut entries = Vec::new();
    for (r, cosets) in fo.cosets.iter().enumerate() {
        for (c, &s) in cosets.iter().enumerate() {
            let values: Vec<Value> = fo
                .k
                .iter()
                .map(|&k| json!([format!("k={}", k + 1), cc.get(r, c, k).expect("k in K").to_json(d)]))
                .collect();
            entries.push(json!({
                "facet": format!("F{}", fo.reps[r]),
                "coset": w.element(s).word_string(),
                "image": format!("F{}", fo.facet_of[r][c]),
                "C": values,
            }));
        }
    }
    json!({
        "entries": entries,
        "residual_zero": cc.residual_zero,
        "nonnegative": cc.nonnegative,
        "support": cc.support,
        "identity_zero": cc.identity_zero,
    })
}

fn witnesses_json(ws: &[Witness], d: u32) -> Value {
    Value::Array(
        ws.iter()
            .map(|x| {
                json!({
                    "input": x.input,
                    "image": x.image.iter().map(|(m, c)| json!([m, c.to_json(d)])).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

fn check_json(c: &Check, d: u32) -> Value {
    json!({ "passed": c.passed, "witnesses": witnesses_json(&c.witnesses, d) })
}

fn dossier_json(iso: &IsoResult, ambient: &GradedAlgebra, d: u32) -> Value {
    let Dossier { kernel_i, kernel_j, invariance, dimension, bijectivity, .. } = &iso.dossier;
    let qlabels = &iso.quotient_algebra.complex.labels;
    let plabels = &ambient.complex.labels;
    let degree_one = ambient.complex.sr_monomial_basis(1);
    let images: Vec<Value> = qlabels
        .iter()
        .enumerate()
        .map(|(l, name)| {
            let lift: Vec<Value> =
                iso.psi.lifts[l].iter().map(|(f, c)| json!([plabels[*f], c.to_json(d)])).collect();
            let reduced: Vec<Value> = iso.psi.images[l]
                .coords
                .iter()
                .map(|(m, c)| json!([monomial_name(&ambient.complex, &degree_one[*m]), c.to_json(d)]))
                .collect();
            json!({ "generator": name, "image": lift, "normal_form": reduced })
        })
        .collect();
    json!({
        "all_passed": iso.dossier.all_passed(),
        "kernel_i": check_json(kernel_i, d),
        "kernel_j": check_json(kernel_j, d),
        "invariance": check_json(invariance, d),
        "dimension": check_json(dimension, d),
        "bijectivity": check_json(bijectivity, d),
        "kernel_i_evaluations": witnesses_json(&iso.dossier.kernel_i_evaluations, d),
        "generator_images": images,
        "quotient_dims": iso.dossier.quotient_dims,
        "invariant_dims": iso.dossier.invariant_dims,
        "image_ranks": iso.dossier.image_ranks,
    })
}

/// Lattice comparison for crystallographic types, an arbitrary orbit rescaling otherwise.
fn scaling_check(
    rs: &RootSystem,
    w: &WeylGroup,
    p: &WPolytope,
    coords: &[Vec<Scalar>],
    k: &[usize],
) -> Result<(ScalingReport, Value)> {
    if rs.is_crystallographic() {
        let other = if p.scaling == NormalScaling::WeightLattice {
            NormalScaling::RootLattice
        } else {
            NormalScaling::WeightLattice
        };
        let lambda = coords.iter().map(|c| rs.from_weight_coords(c)).collect::<Result<Vec<_>>>()?;
        let q = WPolytope::build(rs, w, &lambda, other)?;
        let factors = p.scaling_relative_to(&q)?;
        let rescaled = p.rescaled(&factors)?;
        let normals_match = rescaled.facets.iter().zip(&q.facets).all(|(a, b)| a.functional == b.functional);
        let report = iso_map::verify_scaling_invariance(rs, w, p, k, &factors)?;
        Ok((
            report,
            json!({
                "mode": "lattice",
                "from": p.scaling.name(),
                "to": other.name(),
                "lattice_normals_match": normals_match,
            }),
        ))
    } else {
        let mut factors = vec![Scalar::one(); p.num_orbits()];
        factors[0] = Scalar::from_int(3);
        let report = iso_map::verify_scaling_invariance(rs, w, p, k, &factors)?;
        Ok((report, json!({ "mode": "orbit", "from": p.scaling.name(), "to": "first orbit scaled by 3" })))
    }
}

fn scaling_json(r: &ScalingReport, mut block: Value, d: u32) -> Value {
    let obj = block.as_object_mut().expect("object");
    obj.insert("factors".into(), Value::Array(r.factors.iter().map(|c| c.to_json(d)).collect()));
    obj.insert("dims_match".into(), json!(r.dims_match));
    obj.insert("kernel_generators".into(), json!(r.kernel_generators));
    obj.insert("bijective".into(), json!(r.bijective));
    obj.insert("rescaled_dossier".into(), json!(r.rescaled_dossier));
    obj.insert("passed".into(), json!(r.passed()));
    block
}
