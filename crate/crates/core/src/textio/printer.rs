//! Canonical formatting; `parse(print(f)) == f` for every parsed file.

use std::fmt::Write;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ast::*;

pub fn print(file: &SourceFile) -> String {
    let mut out = match file.field {
        FieldDecl::Rationals => "field Q;\n".to_string(),
        FieldDecl::Prime(p) => format!("field F {p};\n"),
    };
    for d in &file.decls {
        out.push('\n');
        out.push_str(&print_decl(d));
    }
    out
}

fn alg(a: &AlgRef) -> String {
    if a.op {
        format!("{}^op", a.name)
    } else {
        a.name.clone()
    }
}

fn rat(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn path(p: &PathExpr) -> String {
    match p {
        PathExpr::Lazy(v) => format!("id({v})"),
        PathExpr::Arrows(a) => a.join("."),
    }
}

/// Writes `± c*body` with the sign folded into the separator.
fn signed_terms<'a>(terms: impl Iterator<Item = (&'a BigRational, String)>) -> String {
    let mut out = String::new();
    for (k, (c, body)) in terms.enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        if !a.is_one() || a.is_zero() {
            let _ = write!(out, "{}*", rat(&a));
        }
        out.push_str(&body);
    }
    out
}

fn matrix(m: &MatrixLit) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| format!("[{}]", r.iter().map(rat).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn vars(v: &[(String, String)]) -> String {
    v.iter().map(|(n, s)| format!("{n}:{s}")).collect::<Vec<_>>().join(", ")
}

pub fn print_decl(d: &Decl) -> String {
    let mut o = String::new();
    match d {
        Decl::Quiver(q) => {
            let _ = writeln!(o, "quiver {} {{", q.name);
            let _ = writeln!(o, "  vertices {};", q.vertices.join(" "));
            for a in &q.arrows {
                let _ = writeln!(o, "  arrow {}: {} -> {};", a.name, a.source, a.target);
            }
            o.push_str("}\n");
        }
        Decl::Algebra(a) => {
            let _ = writeln!(o, "algebra {} over {} {{", a.name, a.quiver);
            for r in &a.relations {
                let _ = writeln!(o, "  rel {};", signed_terms(r.terms.iter().map(|(c, p)| (c, path(p)))));
            }
            if let Some(n) = a.nilpotent {
                let _ = writeln!(o, "  nilpotent {n};");
            }
            o.push_str("}\n");
        }
        Decl::Module(m) => match &m.body {
            ModuleBody::Explicit { dims, maps } => {
                let _ = writeln!(o, "module {} over {} {{", m.name, alg(&m.algebra));
                for (v, d) in dims {
                    let _ = writeln!(o, "  dim {v} = {d};");
                }
                for (a, mat) in maps {
                    let _ = writeln!(o, "  map {a} = {};", matrix(mat));
                }
                o.push_str("}\n");
            }
            ModuleBody::Projective(v) => {
                let _ = writeln!(o, "module {} = proj({}, {v});", m.name, alg(&m.algebra));
            }
            ModuleBody::Simple(v) => {
                let _ = writeln!(o, "module {} = simple({}, {v});", m.name, alg(&m.algebra));
            }
            ModuleBody::Sum(parts) => {
                let _ = writeln!(o, "module {} = sum({});", m.name, parts.join(", "));
            }
        },
        Decl::Pp(p) => {
            let _ = writeln!(o, "pp {} over {} {{", p.name, alg(&p.algebra));
            if !p.free.is_empty() {
                let _ = writeln!(o, "  free {};", vars(&p.free));
            }
            if !p.bound.is_empty() {
                let _ = writeln!(o, "  exists {};", vars(&p.bound));
            }
            for e in &p.equations {
                let terms = e.terms.iter().map(|(c, pa, v)| {
                    let body = match pa {
                        Some(pa) => format!("{}*{v}", path(pa)),
                        None => v.clone(),
                    };
                    (c, body)
                });
                let _ = writeln!(o, "  eq {}: {} = 0;", e.sort, signed_terms(terms));
            }
            o.push_str("}\n");
        }
        Decl::Pair(p) => {
            let _ = write!(o, "pair {} over {} = {} / {}", p.name, alg(&p.algebra), p.top, p.bottom);
            if let Some(t) = &p.testset {
                let _ = write!(o, " testset {t}");
            }
            o.push_str(";\n");
        }
        Decl::Interp(i) => {
            let _ = writeln!(o, "interp {} from {} to {} {{", i.name, alg(&i.source), alg(&i.target));
            for (v, p) in &i.sorts {
                let _ = writeln!(o, "  sort {v} = {p};");
            }
            for (a, f) in &i.arrows {
                let _ = writeln!(o, "  arrow {a} = {f};");
            }
            match &i.mode {
                Some(ModeDecl::Exact) => o.push_str("  mode exact;\n"),
                Some(ModeDecl::TestSet(t)) => {
                    let _ = writeln!(o, "  mode testset {t};");
                }
                None => {}
            }
            o.push_str("}\n");
        }
        Decl::Fixture(f) => {
            let body = match &f.body {
                FixtureBody::List(l) => format!("{{ {} }}", l.join(", ")),
                FixtureBody::Jordan { algebra, max_dim } => format!("jordan({}, {max_dim})", alg(algebra)),
                FixtureBody::Image { interp, fixture } => format!("image({interp}, {fixture})"),
            };
            let _ = writeln!(o, "fixture {} = {body};", f.name);
        }
        Decl::Auslander(a) => {
            let _ = writeln!(o, "auslander {} over {} = {{ {} }};", a.name, alg(&a.algebra), a.modules.join(", "));
        }
        Decl::SModule(s) => {
            let kind = match s.kind {
                SModuleKind::Projective => "proj",
                SModuleKind::Simple => "simple",
            };
            let _ = writeln!(o, "smodule {} = {kind}({}, {});", s.name, s.auslander, s.summand);
        }
    }
    o
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    #[test]
    fn round_trip_small_file() {
        let text = "field F 5;\nquiver L { vertices v; arrow T: v -> v; }\n\
                    algebra KT over L { rel -T.T.T + 2*T.T; nilpotent 4; }\n\
                    module M over KT { dim v = 2; map T = [[0, 1], [0, 0]]; }\n\
                    rightmodule N over KT { dim v = 1; }\n\
                    pp f over KT { free x:v; exists y:v; eq v: x - 1/2*T.T*y + 0*id(v)*x = 0; }\n";
        let f = parse(text).unwrap();
        let printed = print(&f);
        assert_eq!(parse(&printed).unwrap(), f);
        assert!(printed.contains("x - 1/2*T.T*y + 0*id(v)*x = 0"));
        assert!(printed.contains("module N over KT^op"));
    }
}
