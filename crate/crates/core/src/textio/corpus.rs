//! The example files shipped with the library.

/// `(file name, contents)` for every bundled `.ppc` file.
pub const FIXTURES: &[(&str, &str)] = &[
    ("a2.ppc", include_str!("../../fixtures/a2.ppc")),
    ("a3.ppc", include_str!("../../fixtures/a3.ppc")),
    ("a1tilde.ppc", include_str!("../../fixtures/a1tilde.ppc")),
    ("d4tilde.ppc", include_str!("../../fixtures/d4tilde.ppc")),
    ("morita.ppc", include_str!("../../fixtures/morita.ppc")),
    ("forget.ppc", include_str!("../../fixtures/forget.ppc")),
    ("keps.ppc", include_str!("../../fixtures/keps.ppc")),
];

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
