//! Line-oriented group-spec documents.
//!
//! ```text
//! # S4 acting on 4 points, with A4 as the normal subgroup
//! degree: 4
//! generators:
//! (1 2)
//! (1 2 3 4)
//! subgroup:
//! (1 2 3)
//! (1 2)(3 4)
//! ```
//!
//! Points are 1-based. `#` starts a comment. The `subgroup:` section may be
//! empty or absent, in which case `H` is trivial.

use std::fmt::Write as _;

use thiserror::Error;

use super::{enumerate_elements, FiniteGroup, GroupError, Permutation, DEFAULT_ORDER_CAP};

/// Degrees above this are rejected before any allocation proportional to them.
pub const MAX_DEGREE: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("missing `degree:` line")]
    MissingDegree,
    #[error("line {line}: `degree:` given twice")]
    DuplicateDegree { line: usize },
    #[error("line {line}: invalid degree {value:?}")]
    BadDegree { line: usize, value: String },
    #[error("line {line}: degree {degree} exceeds the limit of {MAX_DEGREE}")]
    DegreeTooLarge { line: usize, degree: usize },
    #[error("line {line}: unrecognized directive {text:?}")]
    UnknownDirective { line: usize, text: String },
    #[error("line {line}: permutation outside a `generators:` or `subgroup:` section")]
    OutsideSection { line: usize },
    #[error("line {line}: {source}")]
    Permutation { line: usize, source: GroupError },
    #[error("line {line}: subgroup generator {perm} is not an element of G")]
    SubgroupGeneratorNotInGroup { line: usize, perm: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Generators,
    Subgroup,
}

/// The syntactic content of a group-spec document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub subgroup: Vec<Permutation>,
    /// Source line of each subgroup generator, for diagnostics.
    subgroup_lines: Vec<usize>,
}

impl GroupSpec {
    pub fn new(degree: usize, generators: Vec<Permutation>, subgroup: Vec<Permutation>) -> Self {
        let subgroup_lines = vec![0; subgroup.len()];
        GroupSpec {
            degree,
            generators,
            subgroup,
            subgroup_lines,
        }
    }

    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let mut degree: Option<usize> = None;
        let mut section: Option<Section> = None;
        let mut pending: Vec<(usize, Section, &str)> = Vec::new();

        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if content.starts_with('(') {
                let sec = section.ok_or(SpecError::OutsideSection { line })?;
                pending.push((line, sec, content));
                continue;
            }
            let Some((key, value)) = content.split_once(':') else {
                return Err(SpecError::UnknownDirective {
                    line,
                    text: content.to_string(),
                });
            };
            let value = value.trim();
            match key.trim() {
                "degree" => {
                    if degree.is_some() {
                        return Err(SpecError::DuplicateDegree { line });
                    }
                    let d: usize = value.parse().map_err(|_| SpecError::BadDegree {
                        line,
                        value: value.to_string(),
                    })?;
                    if d == 0 {
                        return Err(SpecError::BadDegree {
                            line,
                            value: value.to_string(),
                        });
                    }
                    if d > MAX_DEGREE {
                        return Err(SpecError::DegreeTooLarge { line, degree: d });
                    }
                    degree = Some(d);
                    section = None;
                }
                name @ ("generators" | "subgroup") => {
                    let sec = if name == "generators" {
                        Section::Generators
                    } else {
                        Section::Subgroup
                    };
                    section = Some(sec);
                    if !value.is_empty() {
                        pending.push((line, sec, value));
                    }
                }
                _ => {
                    return Err(SpecError::UnknownDirective {
                        line,
                        text: content.to_string(),
                    })
                }
            }
        }

        let degree = degree.ok_or(SpecError::MissingDegree)?;
        let mut spec = GroupSpec::new(degree, Vec::new(), Vec::new());
        for (line, sec, body) in pending {
            let perm =
                Permutation::parse_cycles(degree, body).map_err(|source| SpecError::Permutation { line, source })?;
            match sec {
                Section::Generators => spec.generators.push(perm),
                Section::Subgroup => {
                    spec.subgroup.push(perm);
                    spec.subgroup_lines.push(line);
                }
            }
        }
        Ok(spec)
    }

    /// Enumerates `(G, H)`.
    pub fn build(&self, order_cap: usize) -> Result<(FiniteGroup, FiniteGroup), SpecError> {
        let g = enumerate_elements(self.degree, &self.generators, order_cap)?;
        for (perm, &line) in self.subgroup.iter().zip(&self.subgroup_lines) {
            if !g.contains(perm) {
                return Err(SpecError::SubgroupGeneratorNotInGroup {
                    line,
                    perm: perm.to_string(),
                });
            }
        }
        let h = enumerate_elements(self.degree, &self.subgroup, order_cap)?;
        Ok((g, h))
    }

    /// Canonical text form; parses back to an equal `GroupSpec`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "degree: {}", self.degree);
        out.push_str("generators:\n");
        for g in &self.generators {
            let _ = writeln!(out, "{g}");
        }
        out.push_str("subgroup:\n");
        for h in &self.subgroup {
            let _ = writeln!(out, "{h}");
        }
        out
    }
}

pub fn parse_group_spec(text: &str) -> Result<(FiniteGroup, FiniteGroup), SpecError> {
    parse_group_spec_with_cap(text, DEFAULT_ORDER_CAP)
}

pub fn parse_group_spec_with_cap(text: &str, order_cap: usize) -> Result<(FiniteGroup, FiniteGroup), SpecError> {
    GroupSpec::parse(text)?.build(order_cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    const S4_A4: &str = "\
# S4 with A4
degree: 4
generators:
(1 2)
(1 2 3 4)   # a 4-cycle
subgroup:
(1 2 3)
(1 2)(3 4)
";

    #[test]
    fn s4_a4() {
        let (g, h) = parse_group_spec(S4_A4).unwrap();
        assert_eq!((g.order(), h.order()), (24, 12));
    }

    #[test]
    fn empty_subgroup_is_trivial() {
        let (g, h) = parse_group_spec("degree: 3\ngenerators:\n(1 2 3)\nsubgroup:\n").unwrap();
        assert_eq!((g.order(), h.order()), (3, 1));
        let (_, h) = parse_group_spec("degree: 3\ngenerators:\n(1 2 3)\n").unwrap();
        assert_eq!(h.order(), 1);
    }

    #[test]
    fn subgroup_equal_to_group() {
        let text = "degree: 4\ngenerators:\n(1 2)\n(1 2 3 4)\nsubgroup:\n(1 2)\n(1 2 3 4)\n";
        let (g, h) = parse_group_spec(text).unwrap();
        assert_eq!(g.order(), h.order());
    }

    #[test]
    fn identity_and_inline_generator() {
        let (g, _) = parse_group_spec("degree: 2\ngenerators: ()\n").unwrap();
        assert_eq!(g.order(), 1);
        let (g, _) = parse_group_spec("degree: 3\ngenerators: (1 2 3)\n").unwrap();
        assert_eq!(g.order(), 3);
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_group_spec("generators:\n(1 2)\n").unwrap_err(),
            SpecError::MissingDegree
        );
        assert!(matches!(
            parse_group_spec("degree: 3\ngenerators:\n(1 2\n").unwrap_err(),
            SpecError::Permutation {
                line: 3,
                source: GroupError::MalformedCycle(_)
            }
        ));
        assert_eq!(
            parse_group_spec("degree: 3\ngenerators:\n(1 5)\n").unwrap_err(),
            SpecError::Permutation {
                line: 3,
                source: GroupError::PointOutOfRange { point: 5, degree: 3 }
            }
        );
        assert_eq!(
            parse_group_spec("degree: 3\n(1 2)\n").unwrap_err(),
            SpecError::OutsideSection { line: 2 }
        );
        assert_eq!(
            parse_group_spec("degree: 4\ngenerators:\n(1 2 3)\nsubgroup:\n(1 2)\n").unwrap_err(),
            SpecError::SubgroupGeneratorNotInGroup {
                line: 5,
                perm: "(1 2)".into()
            }
        );
        assert!(matches!(
            parse_group_spec("degree: x\n").unwrap_err(),
            SpecError::BadDegree { line: 1, .. }
        ));
        assert!(matches!(
            parse_group_spec("degree: 0\n").unwrap_err(),
            SpecError::BadDegree { .. }
        ));
        assert!(matches!(
            parse_group_spec("degree: 99999999\n").unwrap_err(),
            SpecError::DegreeTooLarge { .. }
        ));
        assert!(matches!(
            parse_group_spec("degree: 3\nfoo: 1\n").unwrap_err(),
            SpecError::UnknownDirective { line: 2, .. }
        ));
        assert!(matches!(
            parse_group_spec("degree: 3\ndegree: 3\n").unwrap_err(),
            SpecError::DuplicateDegree { line: 2 }
        ));
    }

    #[test]
    fn order_cap_is_reported() {
        let text = "degree: 5\ngenerators:\n(1 2)\n(1 2 3 4 5)\n";
        assert_eq!(
            parse_group_spec_with_cap(text, 50).unwrap_err(),
            SpecError::Group(GroupError::TooLarge { cap: 50 })
        );
    }

    #[test]
    fn text_round_trip() {
        let spec = GroupSpec::parse(S4_A4).unwrap();
        let again = GroupSpec::parse(&spec.to_text()).unwrap();
        assert_eq!(again.degree, spec.degree);
        assert_eq!(again.generators, spec.generators);
        assert_eq!(again.subgroup, spec.subgroup);
    }
}
