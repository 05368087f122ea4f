//! Interpretation functors given by pp-pairs and pp-maps: validation,
//! application to modules and morphisms, round trips and embedding checks.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, QuotientBasis, Scalar, Subspace};
use crate::ppcore::{compose_maps, conj, linear_combination, PpFormula, PpMap, PpPair};
use crate::ppeval::{check_pp_map, eval, pp_implies, MapCheck, Mode};
use crate::quivalg::{Path, QuiverAlgebra};
use crate::repmod::{are_isomorphic, indecomposability, IsoVerdict, RepMorphism, Representation};

/// How a functor's conditions are verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationMode {
    Exact,
    TestSet(Vec<Representation>),
}

impl ValidationMode {
    fn as_mode(&self) -> Mode<'_> {
        match self {
            ValidationMode::Exact => Mode::Exact,
            ValidationMode::TestSet(m) => Mode::TestSet(m),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpretationFunctor {
    name: String,
    source: Arc<QuiverAlgebra>,
    target: Arc<QuiverAlgebra>,
    vertex_sorts: Vec<PpPair>,
    arrow_maps: Vec<PpMap>,
    mode: ValidationMode,
    validated: bool,
}

/// Per-arrow and per-relation validation outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub arrows: Vec<(String, MapCheck)>,
    pub relations: Vec<bool>,
    pub relative_to_test_set: bool,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.arrows.iter().all(|(_, c)| c.holds()) && self.relations.iter().all(|&r| r)
    }
}

impl InterpretationFunctor {
    /// `vertex_sorts[v]` interprets target vertex `v`; `arrow_rhos[a]` is the
    /// relation for target arrow `a`, over source sorts ++ target sorts.
    pub fn new(
        name: &str,
        source: Arc<QuiverAlgebra>,
        target: Arc<QuiverAlgebra>,
        vertex_sorts: Vec<PpPair>,
        arrow_rhos: Vec<PpFormula>,
        mode: ValidationMode,
    ) -> Result<InterpretationFunctor> {
        if vertex_sorts.len() != target.vertex_count() || arrow_rhos.len() != target.quiver().arrows().len() {
            return Err(Error::InvalidInput(format!(
                "functor `{name}` must give one sort per target vertex and one map per target arrow"
            )));
        }
        for p in &vertex_sorts {
            if p.algebra().as_ref() != source.as_ref() {
                return Err(Error::AlgebraMismatch);
            }
        }
        if let ValidationMode::TestSet(ms) = &mode {
            if ms.iter().any(|m| m.algebra().as_ref() != source.as_ref()) {
                return Err(Error::AlgebraMismatch);
            }
        }
        let arrow_maps = target
            .quiver()
            .arrows()
            .iter()
            .zip(arrow_rhos)
            .map(|(a, rho)| PpMap::new(vertex_sorts[a.source].clone(), vertex_sorts[a.target].clone(), rho))
            .collect::<Result<_>>()?;
        Ok(InterpretationFunctor {
            name: name.to_string(),
            source,
            target,
            vertex_sorts,
            arrow_maps,
            mode,
            validated: false,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<QuiverAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QuiverAlgebra> {
        &self.target
    }

    pub fn vertex_sorts(&self) -> &[PpPair] {
        &self.vertex_sorts
    }

    pub fn arrow_maps(&self) -> &[PpMap] {
        &self.arrow_maps
    }

    pub fn mode(&self) -> &ValidationMode {
        &self.mode
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// The relation defined by a target path: composite of the arrow maps,
    /// or the identity for a lazy path.
    fn path_map(&self, p: &Path) -> Result<PpFormula> {
        let sorts = self.vertex_sorts[p.source].free_sorts();
        let mut acc = PpFormula::identity_map(self.source.clone(), &sorts);
        let mut mid = sorts.len();
        for (k, &a) in p.arrows.iter().enumerate() {
            let rho = &self.arrow_maps[a].rho;
            acc = if k == 0 { rho.clone() } else { compose_maps(&acc, rho, mid)? };
            mid = self.arrow_maps[a].target.free_sorts().len();
        }
        Ok(acc)
    }

    /// Checks every arrow map and that every target relation is sent to a
    /// map landing in the bottom formula.
    pub fn validate(&mut self) -> Result<ValidationReport> {
        for (v, p) in self.vertex_sorts.iter().enumerate() {
            p.require_certified(&format!("sort of vertex `{}` in `{}`", self.target.quiver().vertex_name(v), self.name))?;
        }
        let mode = self.mode.as_mode();
        let mut arrows = Vec::new();
        for (a, m) in self.target.quiver().arrows().iter().zip(&self.arrow_maps) {
            arrows.push((a.name.clone(), check_pp_map(m, mode)?));
        }
        let mut relations = Vec::new();
        for r in self.target.relations() {
            let (s, t) = (r.source, r.target);
            let maps: Vec<PpFormula> = r.terms().map(|(p, _)| self.path_map(p)).collect::<Result<_>>()?;
            let coeffs: Vec<Scalar> = r.terms().map(|(_, c)| c.clone()).collect();
            let refs: Vec<&PpFormula> = maps.iter().collect();
            let n = self.vertex_sorts[s].free_sorts().len();
            let sum = linear_combination(&refs, &coeffs, n)?;
            let ident: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
            let lhs = conj(&sum, self.vertex_sorts[s].top(), &ident)?;
            let xs = self.vertex_sorts[s].free_sorts();
            let rhs = conj(&PpFormula::top(self.source.clone(), &xs), self.vertex_sorts[t].bottom(), &[])?;
            relations.push(pp_implies(&lhs, &rhs, mode)?.holds);
        }
        let report = ValidationReport {
            arrows,
            relations,
            relative_to_test_set: matches!(self.mode, ValidationMode::TestSet(_)),
        };
        self.validated = report.valid();
        Ok(report)
    }

    fn require_validated(&self) -> Result<()> {
        if self.validated {
            Ok(())
        } else {
            Err(Error::NotValidated(self.name.clone()))
        }
    }

    fn quotients(&self, m: &Representation) -> Result<Vec<(Subspace, Subspace, QuotientBasis)>> {
        self.vertex_sorts
            .iter()
            .map(|p| {
                let top = eval(p.top(), m)?.space;
                let bottom = eval(p.bottom(), m)?.space;
                let qb = QuotientBasis::new(&top, &bottom)?;
                Ok((top, bottom, qb))
            })
            .collect()
    }

    /// `F(M)`: each target vertex gets `φ(M)/ψ(M)` with coset representatives
    /// taken from the canonical basis of `φ(M)`.
    pub fn apply(&self, m: &Representation) -> Result<Representation> {
        self.require_validated()?;
        if m.algebra().as_ref() != self.source.as_ref() {
            return Err(Error::AlgebraMismatch);
        }
        let field = self.target.field();
        let qs = self.quotients(m)?;
        let undefined = |a: &str, why: &str| Error::InducedMapUndefined(format!("arrow `{a}` of `{}`: {why}", self.name));
        let mut maps = Vec::new();
        for (arrow, pm) in self.target.quiver().arrows().iter().zip(&self.arrow_maps) {
            let (src_top, src_bottom, src_q) = &qs[arrow.source];
            let (tgt_top, tgt_bottom, tgt_q) = &qs[arrow.target];
            let graph = eval(&pm.rho, m)?.space;
            let nx = src_top.ambient();
            let ny = tgt_top.ambient();
            let b = graph.basis();
            let bx = b.select_cols(&(0..nx).collect::<Vec<_>>());
            let by = b.select_cols(&(nx..nx + ny).collect::<Vec<_>>());
            // image of x: some ȳ with (x, ȳ) in the graph
            let image = |x: &[Scalar]| -> Option<Vec<Scalar>> {
                if graph.dim() == 0 {
                    return x.iter().all(Scalar::is_zero).then(|| vec![field.zero(); ny]);
                }
                let c = bx.transpose().solve(x)?;
                Some(by.transpose().mul_vec(&c))
            };
            // indeterminacy ρ(0, ȳ) must lie in ψ′
            let zero_fibre = graph.intersect(&Subspace::span(
                field,
                nx + ny,
                (0..ny)
                    .map(|k| {
                        let mut v = vec![field.zero(); nx + ny];
                        v[nx + k] = field.one();
                        v
                    })
                    .collect(),
            ))?;
            let fibre = zero_fibre.project(&(nx..nx + ny).collect::<Vec<_>>());
            if !tgt_bottom.contains(&fibre)? {
                return Err(undefined(&arrow.name, "the relation is not functional modulo the bottom formula"));
            }
            for v in src_bottom.basis_vectors() {
                let y = image(&v).ok_or_else(|| undefined(&arrow.name, "bottom element has no image"))?;
                if !tgt_bottom.contains_vector(&y) {
                    return Err(undefined(&arrow.name, "bottom is not sent into bottom"));
                }
            }
            let mut mat = Matrix::zeros(field, tgt_q.dim(), src_q.dim());
            for (j, r) in src_q.representatives().iter().enumerate() {
                let y = image(r).ok_or_else(|| undefined(&arrow.name, "element has no image"))?;
                let coords = tgt_q
                    .coset_coordinates(&y)
                    .ok_or_else(|| undefined(&arrow.name, "image leaves the top formula"))?;
                for (i, c) in coords.into_iter().enumerate() {
                    mat.set(i, j, c);
                }
            }
            maps.push(mat);
        }
        let dims = qs.iter().map(|(_, _, q)| q.dim()).collect();
        Representation::new(self.target.clone(), dims, maps).map_err(|e| match e {
            Error::InvalidInput(msg) => Error::InducedMapUndefined(format!("image violates a target relation: {msg}")),
            other => other,
        })
    }

    /// `F(h)` for a morphism `h: M -> N`, on the canonical coset bases.
    pub fn apply_morphism(&self, h: &RepMorphism) -> Result<RepMorphism> {
        let fm = self.apply(h.source())?;
        let fn_ = self.apply(h.target())?;
        let qm = self.quotients(h.source())?;
        let qn = self.quotients(h.target())?;
        let field = self.target.field();
        let mut blocks = Vec::new();
        for (v, pair) in self.vertex_sorts.iter().enumerate() {
            let sorts = pair.free_sorts();
            let src_q = &qm[v].2;
            let tgt_q = &qn[v].2;
            let mut b = Matrix::zeros(field, tgt_q.dim(), src_q.dim());
            for (j, r) in src_q.representatives().iter().enumerate() {
                let mut out = Vec::new();
                let mut off = 0;
                for &s in &sorts {
                    let d = h.source().dim(s);
                    out.extend(h.apply(s, &r[off..off + d]));
                    off += d;
                }
                let coords = tgt_q
                    .coset_coordinates(&out)
                    .ok_or_else(|| Error::InducedMapUndefined("morphism leaves the top formula".into()))?;
                for (i, c) in coords.into_iter().enumerate() {
                    b.set(i, j, c);
                }
            }
            blocks.push(b);
        }
        RepMorphism::new(&fm, &fn_, blocks)
    }
}

/// Result of `G(F(M)) ≅ M` for one module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrip {
    pub image_dims: Vec<usize>,
    pub back_dims: Vec<usize>,
    pub verdict: IsoVerdict,
}

pub fn round_trip_check(
    f: &InterpretationFunctor,
    g: &InterpretationFunctor,
    modules: &[Representation],
    seed: u64,
) -> Result<Vec<RoundTrip>> {
    if g.source.as_ref() != f.target.as_ref() || g.target.as_ref() != f.source.as_ref() {
        return Err(Error::AlgebraMismatch);
    }
    modules
        .iter()
        .map(|m| {
            let fm = f.apply(m)?;
            let gfm = g.apply(&fm.rebind(g.source.clone())?)?.rebind(m.algebra().clone())?;
            Ok(RoundTrip {
                image_dims: fm.dims().to_vec(),
                back_dims: gfm.dims().to_vec(),
                verdict: are_isomorphic(&gfm, m, seed)?,
            })
        })
        .collect()
}

/// Whether a functor preserves indecomposability and reflects isomorphism
/// on a list of indecomposables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub indecomposable_images: Vec<bool>,
    /// Pairs `(i, j)` with `F(M_i) ≅ F(M_j)` but `M_i ≇ M_j`.
    pub reflection_failures: Vec<(usize, usize)>,
    pub probabilistic: bool,
}

impl EmbeddingReport {
    pub fn preserves_indecomposability(&self) -> bool {
        self.indecomposable_images.iter().all(|&b| b)
    }

    pub fn reflects_isomorphism(&self) -> bool {
        self.reflection_failures.is_empty()
    }
}

pub fn check_rep_embedding(f: &InterpretationFunctor, modules: &[Representation], seed: u64) -> Result<EmbeddingReport> {
    let images: Vec<Representation> = modules.iter().map(|m| f.apply(m)).collect::<Result<_>>()?;
    let mut indecomposable_images = Vec::new();
    for im in &images {
        indecomposable_images.push(!im.is_zero() && indecomposability(im, seed)?.indecomposable);
    }
    let mut reflection_failures = Vec::new();
    let mut probabilistic = false;
    for i in 0..modules.len() {
        for j in i + 1..modules.len() {
            let img = are_isomorphic(&images[i], &images[j], seed)?;
            probabilistic |= img.probabilistic;
            if img.isomorphic {
                let src = are_isomorphic(&modules[i], &modules[j], seed)?;
                probabilistic |= src.probabilistic;
                if !src.isomorphic {
                    reflection_failures.push((i, j));
                }
            }
        }
    }
    Ok(EmbeddingReport { indecomposable_images, reflection_failures, probabilistic })
}
