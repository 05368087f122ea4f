//! One function per subcommand; each returns a finished report.

use std::sync::Arc;

use num_rational::BigRational;
use ppcat::exactla::Scalar;
use ppcat::funcat::{find_algebra_iso, quotient_skeleton, FinModule};
use ppcat::interp::{check_rep_embedding, round_trip_check, InterpretationFunctor, ValidationMode};
use ppcat::ppcore::{dual, PpMap};
use ppcat::ppeval::{check_pp_map, definable_membership, eval, eval_pair, free_realization, jordan_test_set, pp_implies, Mode};
use ppcat::quivalg::QuiverAlgebra;
use ppcat::repmod::{are_isomorphic, hom_space, RepMorphism, Representation};
use ppcat::tensorpure::{is_split_mono, purity_pp, purity_tensor, saturated_formulas, tensor, tensor_balanced_dim};
use ppcat::textio::ast::{AlgRef, Decl};
use ppcat::textio::report::{self, num, Report};
use ppcat::textio::{formula_decl, print_decl, scalar_of, Workspace, DEFAULT_JORDAN_DIM};
use ppcat::{Error, Result};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::{Command, Common, ModeArg, ModeOpts};

fn load(common: &Common) -> Result<Workspace> {
    let text = std::fs::read_to_string(&common.file)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", common.file.display())))?;
    Workspace::load(&text)
}

fn report(op: &str, common: &Common) -> Report {
    let mut r = Report::new(op, common.seed);
    r.input("file", common.file.display().to_string());
    r
}

/// Named modules: a single module, or the members of a fixture as `F[i]`.
fn targets(ws: &Workspace, name: &str) -> Result<Vec<(String, Representation)>> {
    if let Ok(m) = ws.module(name) {
        return Ok(vec![(name.to_string(), m.clone())]);
    }
    Ok(ws.fixture(name)?.iter().enumerate().map(|(i, m)| (format!("{name}[{i}]"), m.clone())).collect())
}

fn pool(common: &Common) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(common.jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot start worker threads: {e}")))
}

/// Runs `f` over the modules on `--jobs` threads, keeping input order.
fn over<T: Send>(
    common: &Common,
    items: &[(String, Representation)],
    f: impl Fn(&Representation) -> Result<T> + Sync + Send,
) -> Result<Vec<T>> {
    pool(common)?.install(|| items.par_iter().map(|(_, m)| f(m)).collect())
}

enum Resolved {
    Exact,
    TestSet(String, Vec<Representation>),
}

impl Resolved {
    fn mode(&self) -> Mode<'_> {
        match self {
            Resolved::Exact => Mode::Exact,
            Resolved::TestSet(_, m) => Mode::TestSet(m),
        }
    }

    fn describe(&self, r: &mut Report) {
        match self {
            Resolved::Exact => {
                r.set("mode", json!("exact"));
            }
            Resolved::TestSet(name, ms) => {
                r.set("mode", json!("testset"));
                r.set("testset", json!(name));
                r.set("testset_size", num(ms.len()));
            }
        }
    }
}

fn default_suite_name() -> String {
    format!("jordan<={DEFAULT_JORDAN_DIM}")
}

fn resolve_mode(ws: &Workspace, alg: &Arc<QuiverAlgebra>, opts: &ModeOpts) -> Result<Resolved> {
    match (opts.mode, &opts.testset) {
        (Some(ModeArg::Exact), Some(_)) => Err(Error::InvalidInput("--testset conflicts with --mode exact".into())),
        (_, Some(t)) => Ok(Resolved::TestSet(t.clone(), ws.fixture(t)?.to_vec())),
        (Some(ModeArg::Exact), None) => Ok(Resolved::Exact),
        (None, None) if alg.is_admissible() => Ok(Resolved::Exact),
        _ => Ok(Resolved::TestSet(default_suite_name(), jordan_test_set(alg, DEFAULT_JORDAN_DIM)?)),
    }
}

fn values(names: &[(String, Representation)], vals: Vec<Value>) -> Value {
    Value::Array(
        names
            .iter()
            .zip(vals)
            .map(|((n, _), v)| {
                let mut m = Map::new();
                m.insert("module".into(), json!(n));
                if let Value::Object(o) = v {
                    m.extend(o);
                }
                Value::Object(m)
            })
            .collect(),
    )
}

fn names_isomorphic_to(ws: &Workspace, c: &Representation, seed: u64) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (name, m) in &ws.modules {
        if m.algebra().as_ref() == c.algebra().as_ref() && m.dims() == c.dims() && are_isomorphic(m, c, seed)?.isomorphic {
            out.push(name.clone());
        }
    }
    Ok(out)
}

fn parse_scalar(ws: &Workspace, s: &str) -> Result<Scalar> {
    let q: BigRational = s.trim().parse().map_err(|_| Error::InvalidInput(format!("`{s}` is not a rational number")))?;
    scalar_of(ws.field, &q)
}

fn auslander_names(ws: &Workspace, name: &str) -> Vec<String> {
    ws.source
        .decls
        .iter()
        .find_map(|d| match d {
            Decl::Auslander(a) if a.name == name => Some(a.modules.clone()),
            _ => None,
        })
        .unwrap_or_default()
}

fn algebra_named<'a>(ws: &'a Workspace, name: &str) -> Result<&'a Arc<QuiverAlgebra>> {
    let (base, op) = match name.strip_suffix("^op") {
        Some(b) => (b, true),
        None => (name, false),
    };
    ws.algebra(&AlgRef { name: base.to_string(), op })
}

pub fn run(cmd: &Command) -> Result<Report> {
    let op = cmd.name();
    match cmd {
        Command::Eval { common, formula, modules } => {
            let ws = load(common)?;
            let f = ws.formula(formula)?;
            let items = targets(&ws, modules)?;
            let vals = over(common, &items, |m| {
                let s = eval(f, m)?;
                Ok(json!({ "dim": num(s.dim()), "basis": report::subspace(&s.space) }))
            })?;
            let mut r = report(op, common);
            r.input("formula", formula.as_str()).input("modules", modules.as_str());
            if items.len() == 1 {
                r.set("dim", vals[0]["dim"].clone());
            }
            r.set("values", values(&items, vals));
            Ok(r)
        }
        Command::PairEval { common, pair, modules } => {
            let ws = load(common)?;
            let p = ws.pair(pair)?;
            let items = targets(&ws, modules)?;
            let vals = over(common, &items, |m| Ok(json!({ "dim": num(eval_pair(p, m)?) })))?;
            let mut r = report(op, common);
            r.input("pair", pair.as_str()).input("modules", modules.as_str());
            r.set("relative_to_test_set", json!(p.is_relative_to_test_set()));
            if items.len() == 1 {
                r.set("dim", vals[0]["dim"].clone());
            }
            r.set("values", values(&items, vals));
            Ok(r)
        }
        Command::Implies { common, mode, from, to } => {
            let ws = load(common)?;
            let f = ws.formula(from)?;
            let g = ws.formula(to)?;
            let resolved = resolve_mode(&ws, f.algebra(), mode)?;
            let imp = pp_implies(f, g, resolved.mode())?;
            let mut r = report(op, common);
            r.input("from", from.as_str()).input("to", to.as_str());
            resolved.describe(&mut r);
            r.set("holds", json!(imp.holds));
            r.set("relative_to_test_set", json!(imp.relative_to_test_set));
            if let Some(k) = imp.counterexample {
                r.set("counterexample", json!({ "index": num(k), "module": report::representation(&match &resolved {
                    Resolved::TestSet(_, ms) => ms[k].clone(),
                    Resolved::Exact => unreachable!("exact mode has no counterexample index"),
                }) }));
            }
            if !imp.holds && matches!(resolved, Resolved::Exact) {
                let fr = free_realization(f)?;
                r.set(
                    "witness",
                    json!({
                        "module": report::representation(&fr.module),
                        "tuple": Value::Array(fr.tuple.iter().map(|v| report::vector(v)).collect()),
                        "isomorphic_to": names_isomorphic_to(&ws, &fr.module, common.seed)?,
                    }),
                );
            }
            Ok(r)
        }
        Command::Dual { common, formula } => {
            let ws = load(common)?;
            let d = dual(ws.formula(formula)?);
            let name = format!("{formula}_dual");
            let mut r = report(op, common);
            r.input("formula", formula.as_str());
            r.set("algebra", json!(d.algebra().name()));
            r.set("text", json!(print_decl(&Decl::Pp(formula_decl(&name, &d)))));
            Ok(r)
        }
        Command::Freereal { common, formula } => {
            let ws = load(common)?;
            let fr = free_realization(ws.formula(formula)?)?;
            let mut r = report(op, common);
            r.input("formula", formula.as_str());
            r.set("module", report::representation(&fr.module));
            r.set("tuple", Value::Array(fr.tuple.iter().map(|v| report::vector(v)).collect()));
            r.set("isomorphic_to", json!(names_isomorphic_to(&ws, &fr.module, common.seed)?));
            Ok(r)
        }
        Command::CheckMap { common, mode, source, target, rho } => {
            let ws = load(common)?;
            let m = PpMap::new(ws.pair(source)?.clone(), ws.pair(target)?.clone(), ws.formula(rho)?.clone())?;
            let resolved = resolve_mode(&ws, m.source.algebra(), mode)?;
            let c = check_pp_map(&m, resolved.mode())?;
            let mut r = report(op, common);
            r.input("source", source.as_str()).input("target", target.as_str()).input("rho", rho.as_str());
            resolved.describe(&mut r);
            r.set("total", json!(c.total));
            r.set("lands_in_top", json!(c.lands_in_top));
            r.set("bottom_to_bottom", json!(c.bottom_to_bottom));
            r.set("holds", json!(c.holds()));
            Ok(r)
        }
        Command::Member { common, pairs, modules } => {
            let ws = load(common)?;
            let ps = pairs.iter().map(|p| ws.pair(p).cloned()).collect::<Result<Vec<_>>>()?;
            let items = targets(&ws, modules)?;
            let vals = over(common, &items, |m| Ok(json!({ "member": definable_membership(&ps, m)? })))?;
            let all = vals.iter().all(|v| v["member"] == json!(true));
            let mut r = report(op, common);
            r.input("pairs", pairs.join(",")).input("modules", modules.as_str());
            r.set("member", json!(all));
            r.set("values", values(&items, vals));
            Ok(r)
        }
        Command::InterpValidate { common, mode, interp } => {
            let ws = load(common)?;
            let f = ws.interp(interp)?;
            let mut r = report(op, common);
            r.input("interp", interp.as_str());
            let report = if mode.mode.is_none() && mode.testset.is_none() {
                match f.mode() {
                    ValidationMode::Exact => {
                        r.set("mode", json!("exact"));
                    }
                    ValidationMode::TestSet(ms) => {
                        r.set("mode", json!("testset"));
                        r.set("testset_size", num(ms.len()));
                    }
                }
                ws.validations.get(interp).cloned().ok_or_else(|| Error::NotValidated(interp.clone()))?
            } else {
                let resolved = resolve_mode(&ws, f.source(), mode)?;
                resolved.describe(&mut r);
                let vm = match resolved {
                    Resolved::Exact => ValidationMode::Exact,
                    Resolved::TestSet(_, ms) => ValidationMode::TestSet(ms),
                };
                let rhos = f.arrow_maps().iter().map(|m| m.rho.clone()).collect();
                let mut g = InterpretationFunctor::new(
                    interp,
                    f.source().clone(),
                    f.target().clone(),
                    f.vertex_sorts().to_vec(),
                    rhos,
                    vm,
                )?;
                g.validate()?
            };
            let q = f.target().quiver();
            let arrows: Map<String, Value> = report
                .arrows
                .iter()
                .map(|(a, c)| {
                    (
                        a.clone(),
                        json!({ "total": c.total, "lands_in_top": c.lands_in_top, "bottom_to_bottom": c.bottom_to_bottom }),
                    )
                })
                .collect();
            r.set("target_vertices", json!(q.vertices()));
            r.set("arrows", Value::Object(arrows));
            r.set("relations", json!(report.relations));
            r.set("relative_to_test_set", json!(report.relative_to_test_set));
            r.set("valid", json!(report.valid()));
            Ok(r)
        }
        Command::InterpApply { common, interp, modules } => {
            let ws = load(common)?;
            let f = ws.interp(interp)?;
            let items = targets(&ws, modules)?;
            let vals = over(common, &items, |m| Ok(json!({ "image": report::representation(&f.apply(m)?) })))?;
            let mut r = report(op, common);
            r.input("interp", interp.as_str()).input("modules", modules.as_str());
            r.set("values", values(&items, vals));
            Ok(r)
        }
        Command::Roundtrip { common, forward, back, modules } => {
            let ws = load(common)?;
            let f = ws.interp(forward)?;
            let g = ws.interp(back)?;
            let items = targets(&ws, modules)?;
            let vals = over(common, &items, |m| {
                let rt = round_trip_check(f, g, std::slice::from_ref(m), common.seed)?.remove(0);
                Ok(json!({
                    "image_dims": rt.image_dims.iter().map(|&d| num(d)).collect::<Vec<_>>(),
                    "back_dims": rt.back_dims.iter().map(|&d| num(d)).collect::<Vec<_>>(),
                    "isomorphic": rt.verdict.isomorphic,
                    "probabilistic": rt.verdict.probabilistic,
                    "witness": rt.verdict.witness.as_ref().map(|w| w.blocks().iter().map(report::matrix).collect::<Vec<_>>()),
                }))
            })?;
            let all = vals.iter().all(|v| v["isomorphic"] == json!(true));
            let mut r = report(op, common);
            r.input("forward", forward.as_str()).input("back", back.as_str()).input("modules", modules.as_str());
            r.set("isomorphic", json!(all));
            r.set("values", values(&items, vals));
            Ok(r)
        }
        Command::Repembed { common, interp, modules } => {
            let ws = load(common)?;
            let f = ws.interp(interp)?;
            let items = targets(&ws, modules)?;
            let ms: Vec<Representation> = items.iter().map(|(_, m)| m.clone()).collect();
            let e = check_rep_embedding(f, &ms, common.seed)?;
            let mut r = report(op, common);
            r.input("interp", interp.as_str()).input("modules", modules.as_str());
            r.set("indecomposable_images", json!(e.indecomposable_images));
            r.set(
                "reflection_failures",
                json!(e.reflection_failures.iter().map(|&(i, j)| [items[i].0.clone(), items[j].0.clone()]).collect::<Vec<_>>()),
            );
            r.set("preserves_indecomposability", json!(e.preserves_indecomposability()));
            r.set("reflects_isomorphism", json!(e.reflects_isomorphism()));
            r.set("probabilistic", json!(e.probabilistic));
            Ok(r)
        }
        Command::Tensor { common, right, left } => {
            let ws = load(common)?;
            let l = ws.module(right)?;
            let m = ws.module(left)?;
            let t = tensor(l, m)?;
            let mut r = report(op, common);
            r.input("right", right.as_str()).input("left", left.as_str());
            r.set("dim", num(t.dim()));
            r.set("balanced_dim", num(tensor_balanced_dim(l, m)?));
            Ok(r)
        }
        Command::Purity { common, source, target, coeffs, right, incomplete } => {
            let ws = load(common)?;
            let m = ws.module(source)?;
            let n = ws.module(target)?;
            let basis = hom_space(m, n)?;
            let f = match coeffs {
                Some(cs) => {
                    if cs.len() != basis.len() {
                        return Err(Error::DimensionMismatch(format!(
                            "--coeffs has {} entries but the hom space has dimension {}",
                            cs.len(),
                            basis.len()
                        )));
                    }
                    let cs = cs.iter().map(|c| parse_scalar(&ws, c)).collect::<Result<Vec<_>>>()?;
                    RepMorphism::combine(m, n, &basis, &cs)
                }
                None if basis.len() == 1 => basis[0].clone(),
                None => {
                    return Err(Error::InvalidInput(format!(
                        "the hom space has dimension {}; choose a map with --coeffs",
                        basis.len()
                    )))
                }
            };
            let ls = ws.fixture(right)?;
            let by_tensor = purity_tensor(&f, ls, !incomplete)?;
            let by_pp = purity_pp(&f, &saturated_formulas(m.algebra(), ls)?)?;
            let split = is_split_mono(&f)?;
            let mut r = report(op, common);
            r.input("source", source.as_str()).input("target", target.as_str()).input("right", right.as_str());
            r.set("map", Value::Array(f.blocks().iter().map(report::matrix).collect()));
            r.set(
                "tensor",
                json!({ "pure": by_tensor.pure, "complete": by_tensor.complete, "witness": by_tensor.witness.map(num) }),
            );
            r.set("pp", json!({ "pure": by_pp.pure, "witness": by_pp.witness.map(num) }));
            r.set("split", json!(split));
            r.set("agree", json!(by_tensor.pure == by_pp.pure));
            Ok(r)
        }
        Command::FuncatAuslander { common, auslander, presented } => {
            let ws = load(common)?;
            let a = ws.auslander(auslander)?;
            let s = &a.algebra;
            let mut r = report(op, common);
            r.input("auslander", auslander.as_str());
            r.set("dim", num(s.dim()));
            r.set("radical_dim", num(s.radical().dim()));
            r.set("labels", json!(s.labels()));
            r.set("summands", json!(auslander_names(&ws, auslander)));
            if let Some(p) = presented {
                r.input("presented", p.as_str());
                let b = algebra_named(&ws, p)?;
                match find_algebra_iso(b, s)? {
                    Some(iso) => {
                        let q = b.quiver();
                        let vm: Map<String, Value> = iso
                            .vertex_map
                            .iter()
                            .enumerate()
                            .map(|(v, &i)| (q.vertex_name(v).to_string(), num(i)))
                            .collect();
                        r.set("isomorphic", json!(true));
                        r.set("vertex_map", Value::Object(vm));
                        r.set("matrix", report::matrix(&iso.matrix));
                    }
                    None => {
                        r.set("isomorphic", json!(false));
                    }
                }
            }
            Ok(r)
        }
        Command::FuncatEval { common, smodule, modules, pair } => {
            let ws = load(common)?;
            let v = ws.smodule(smodule)?;
            let a = ws
                .auslanders
                .values()
                .find(|a| Arc::ptr_eq(&a.algebra, v.algebra()))
                .ok_or_else(|| Error::InvalidInput(format!("no Auslander algebra carries `{smodule}`")))?;
            let items = targets(&ws, modules)?;
            let vals = over(common, &items, |m| {
                let mut o = Map::new();
                o.insert("dim".into(), num(a.functor_eval(v, m)?));
                if let Some(p) = pair {
                    o.insert("pair_dim".into(), num(eval_pair(ws.pair(p)?, m)?));
                }
                Ok(Value::Object(o))
            })?;
            let mut r = report(op, common);
            r.input("smodule", smodule.as_str()).input("modules", modules.as_str());
            if let Some(p) = pair {
                r.input("pair", p.as_str());
                let ms: Vec<Representation> = items.iter().map(|(_, m)| m.clone()).collect();
                r.set("agrees", json!(a.pp_functor_crosscheck(ws.pair(p)?, v, &ms)?));
            }
            r.set("values", values(&items, vals));
            Ok(r)
        }
        Command::FuncatQuotient { common, auslander, generator, functors } => {
            let ws = load(common)?;
            let a = ws.auslander(auslander)?;
            let names = functors.clone().unwrap_or_else(|| ws.smodules_over(auslander));
            let fs: Vec<FinModule> = names.iter().map(|n| ws.smodule(n).cloned()).collect::<Result<_>>()?;
            let g = ws.module(generator)?;
            let serre = a.serre_from_generator(&fs, g)?;
            let sk = quotient_skeleton(&fs, &serre, common.seed)?;
            let summands = auslander_names(&ws, auslander);
            let mut r = report(op, common);
            r.input("auslander", auslander.as_str()).input("generator", generator.as_str());
            r.set(
                "serre_simples",
                json!(serre.simples.iter().map(|&i| summands.get(i).cloned().unwrap_or_else(|| i.to_string())).collect::<Vec<_>>()),
            );
            r.set("discarded", json!(sk.discarded.iter().map(|&i| names[i].clone()).collect::<Vec<_>>()));
            r.set(
                "classes",
                json!(sk.classes.iter().map(|c| c.iter().map(|&i| names[i].clone()).collect::<Vec<_>>()).collect::<Vec<_>>()),
            );
            r.set("class_count", num(sk.classes.len()));
            r.set("probabilistic", json!(sk.probabilistic));
            Ok(r)
        }
    }
}
