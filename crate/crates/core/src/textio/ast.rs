//! Syntax trees for `.ppc` files. Names are kept as written; resolution and
//! sort checking happen in the parser, construction of the mathematical
//! objects in elaboration.

use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    pub field: FieldDecl,
    pub decls: Vec<Decl>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldDecl {
    Rationals,
    Prime(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Quiver(QuiverDecl),
    Algebra(AlgebraDecl),
    Module(ModuleDecl),
    Pp(PpDecl),
    Pair(PairDecl),
    Interp(InterpDecl),
    Fixture(FixtureDecl),
    Auslander(AuslanderDecl),
    SModule(SModuleDecl),
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Quiver(d) => &d.name,
            Decl::Algebra(d) => &d.name,
            Decl::Module(d) => &d.name,
            Decl::Pp(d) => &d.name,
            Decl::Pair(d) => &d.name,
            Decl::Interp(d) => &d.name,
            Decl::Fixture(d) => &d.name,
            Decl::Auslander(d) => &d.name,
            Decl::SModule(d) => &d.name,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverDecl {
    pub name: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// An algebra name, possibly with `^op`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgRef {
    pub name: String,
    pub op: bool,
}

/// Arrows in composition order (`b.a` is "first a, then b"), or `id(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathExpr {
    Lazy(String),
    Arrows(Vec<String>),
}

/// `Σ c * path`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingExpr {
    pub terms: Vec<(BigRational, PathExpr)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDecl {
    pub name: String,
    pub quiver: String,
    pub relations: Vec<RingExpr>,
    pub nilpotent: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: String,
    pub algebra: AlgRef,
    pub body: ModuleBody,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleBody {
    /// Unlisted dimensions are 0 and unlisted maps are zero.
    Explicit { dims: Vec<(String, u64)>, maps: Vec<(String, MatrixLit)> },
    Projective(String),
    Simple(String),
    /// Direct sum of earlier modules over the same algebra.
    Sum(Vec<String>),
}

/// Row-major; `[]` has no rows.
pub type MatrixLit = Vec<Vec<BigRational>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PpDecl {
    pub name: String,
    pub algebra: AlgRef,
    pub free: Vec<(String, String)>,
    pub bound: Vec<(String, String)>,
    pub equations: Vec<EqDecl>,
}

/// `sort: Σ c * path * var = 0`; a missing path is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqDecl {
    pub sort: String,
    pub terms: Vec<(BigRational, Option<PathExpr>, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDecl {
    pub name: String,
    pub algebra: AlgRef,
    pub top: String,
    pub bottom: String,
    /// Certify against a fixture instead of exactly.
    pub testset: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModeDecl {
    Exact,
    TestSet(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpDecl {
    pub name: String,
    pub source: AlgRef,
    pub target: AlgRef,
    pub sorts: Vec<(String, String)>,
    pub arrows: Vec<(String, String)>,
    pub mode: Option<ModeDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureDecl {
    pub name: String,
    pub body: FixtureBody,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixtureBody {
    List(Vec<String>),
    Jordan { algebra: AlgRef, max_dim: u64 },
    Image { interp: String, fixture: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuslanderDecl {
    pub name: String,
    pub algebra: AlgRef,
    pub modules: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SModuleDecl {
    pub name: String,
    pub auslander: String,
    pub kind: SModuleKind,
    pub summand: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SModuleKind {
    Projective,
    Simple,
}
