use std::fs;
use std::path::Path;

use ppcat::textio::{corpus, parse, print, Workspace};
use ppcat::Error;

fn position(e: &Error) -> Option<(usize, usize)> {
    match e {
        Error::Syntax { line, col, .. } | Error::Sort { line, col, .. } | Error::UnresolvedReference { line, col, .. } => {
            Some((*line, *col))
        }
        _ => None,
    }
}

#[test]
fn broken_files_report_the_offending_token() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/broken");
    let mut seen = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let header = text.lines().next().unwrap();
        let mut parts = header.trim_start_matches("# expect ").split_whitespace();
        let kind = parts.next().unwrap();
        let (line, col) = parts.next().unwrap().split_once(':').unwrap();
        let want = (line.parse::<usize>().unwrap(), col.parse::<usize>().unwrap());

        let err = parse(&text).expect_err(&format!("{} should not parse", path.display()));
        assert_eq!(err.kind(), kind, "{}: {err}", path.display());
        let got = position(&err).unwrap();
        assert_eq!(got, want, "{}: {err}", path.display());

        // the position lands on a visible character or at end of input
        match text.lines().nth(got.0 - 1) {
            Some(l) => {
                let c = l.chars().nth(got.1 - 1).unwrap_or_else(|| panic!("{}: column past end", path.display()));
                assert!(!c.is_whitespace(), "{}", path.display());
            }
            None => assert_eq!(got.1, 1),
        }
        seen += 1;
    }
    assert_eq!(seen, 20);
}

#[test]
fn corpus_prints_canonically() {
    for (name, text) in corpus::FIXTURES {
        let f = parse(text).unwrap();
        let once = print(&f);
        let g = parse(&once).unwrap();
        assert_eq!(f, g, "{name}");
        assert_eq!(print(&g), once, "{name}");
        Workspace::load(&once).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
