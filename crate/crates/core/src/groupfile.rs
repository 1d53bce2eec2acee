//! Plain-text group files:
//!
//! ```text
//! # S_4 with a distinguished transposition
//! degree: 4
//! gen: (1 2 3 4)
//! gen: (1 2)
//! sub: (1 2)
//! ```

use std::path::Path;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::params::Params;
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct GroupFile {
    pub group: PermGroup,
    /// Subgroup spanned by the `sub:` lines, if any.
    pub sub: Option<PermGroup>,
}

fn at(line: usize, e: Error) -> Error {
    match e {
        Error::Input(m) => Error::Input(format!("line {line}: {m}")),
        other => other,
    }
}

pub fn parse(text: &str, params: &Params) -> Result<GroupFile> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    let mut subs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once(':') else {
            return Err(Error::Input(format!("line {line}: expected `key: value`")));
        };
        let value = value.trim();
        match key.trim() {
            "degree" => {
                if degree.is_some() {
                    return Err(Error::Input(format!("line {line}: degree given twice")));
                }
                let n: usize = value
                    .parse()
                    .map_err(|_| Error::Input(format!("line {line}: bad degree {value:?}")))?;
                if n == 0 {
                    return Err(Error::Input(format!(
                        "line {line}: degree must be positive"
                    )));
                }
                if n > params.max_degree {
                    return Err(Error::Resource(format!(
                        "line {line}: degree {n} exceeds the cap {}",
                        params.max_degree
                    )));
                }
                degree = Some(n);
            }
            kind @ ("gen" | "sub") => {
                let Some(n) = degree else {
                    return Err(Error::Input(format!(
                        "line {line}: `{kind}` before `degree`"
                    )));
                };
                let p = Permutation::parse_cycles(n, value).map_err(|e| at(line, e))?;
                if kind == "gen" {
                    gens.push(p);
                } else {
                    subs.push(p);
                }
            }
            other => {
                return Err(Error::Input(format!("line {line}: unknown key {other:?}")));
            }
        }
    }
    let Some(n) = degree else {
        return Err(Error::Input("missing `degree:` line".into()));
    };
    if gens.is_empty() {
        return Err(Error::Input("no `gen:` lines".into()));
    }
    let group = PermGroup::with_params(n, gens, params)?;
    let sub = if subs.is_empty() {
        None
    } else {
        let h = PermGroup::new(n, subs)?;
        if !h.is_subgroup_of(&group) {
            return Err(Error::Input(
                "`sub:` elements do not lie in the group".into(),
            ));
        }
        Some(h)
    };
    Ok(GroupFile { group, sub })
}

/// Reads and parses a group file. Errors do not repeat the path.
pub fn load(path: &Path, params: &Params) -> Result<GroupFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(e.to_string()))?;
    parse(&text, params)
}

/// Serializes a group back into the file format.
pub fn render(g: &PermGroup, sub: Option<&PermGroup>, comment: &str) -> String {
    let mut out = String::new();
    if !comment.is_empty() {
        for l in comment.lines() {
            out.push_str(&format!("# {l}\n"));
        }
    }
    out.push_str(&format!("degree: {}\n", g.degree()));
    if g.generators().is_empty() {
        out.push_str("gen: ()\n");
    }
    for x in g.generators() {
        out.push_str(&format!("gen: {x}\n"));
    }
    if let Some(h) = sub {
        if h.generators().is_empty() {
            out.push_str("sub: ()\n");
        }
        for x in h.generators() {
            out.push_str(&format!("sub: {x}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn parses_group_and_subgroup() {
        let f = parse(
            "# S_4\ndegree: 4\ngen: (1 2 3 4)\ngen: (1 2)  # transposition\nsub: (1 2)\n",
            &Params::default(),
        )
        .unwrap();
        assert_eq!(f.group.order(), &BigUint::from(24u32));
        assert_eq!(f.sub.unwrap().order(), &BigUint::from(2u32));
    }

    #[test]
    fn trivial_group_file() {
        let f = parse("degree: 1\ngen: ()\n", &Params::default()).unwrap();
        assert!(f.group.is_trivial());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse("degree: 4\n\ngen: (1 2)(2 3)\n", &Params::default()).unwrap_err();
        assert!(
            matches!(&e, Error::Input(m) if m.starts_with("line 3:")),
            "{e}"
        );
        let e = parse("gen: (1 2)\n", &Params::default()).unwrap_err();
        assert!(e.to_string().contains("line 1"));
        let e = parse("degree: 3\ngen: (1 2)\nsub: (1 2 3)\n", &Params::default()).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(parse("degree: x\n", &Params::default()).is_err());
    }

    #[test]
    fn render_round_trips() {
        let g = PermGroup::symmetric(5);
        let text = render(&g, Some(&PermGroup::alternating(5)), "S_5");
        let f = parse(&text, &Params::default()).unwrap();
        assert!(f.group.equals(&g));
        assert_eq!(f.sub.unwrap().order(), &BigUint::from(60u32));
    }
}
