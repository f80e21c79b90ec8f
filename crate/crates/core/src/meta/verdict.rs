use std::fmt;

use serde::Serialize;

/// Observation depth. Each `▷` in a relation consumes one unit; depth 0 is
/// the trivially true base.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Depth(pub u32);

impl From<u32> for Depth {
    fn from(n: u32) -> Depth {
        Depth(n)
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Outcome of a depth-indexed check.
///
/// `FailsAt` carries the smallest failing depth, so a verdict at depth `n`
/// determines the verdict at every other depth: it holds below `depth` and
/// fails from `depth` on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    HoldsAt { depth: u32 },
    FailsAt { depth: u32, path: Vec<String> },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::HoldsAt { .. })
    }

    pub fn fails(&self) -> bool {
        !self.holds()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::HoldsAt { depth } => write!(f, "holds at depth {depth}"),
            Verdict::FailsAt { depth, path } if path.is_empty() => {
                write!(f, "fails within depth {depth}")
            }
            Verdict::FailsAt { depth, path } => {
                write!(f, "fails within depth {depth} at {}", path.join(" / "))
            }
        }
    }
}

/// Internal result of a checker at requested depth `n`: the relation holds at
/// every depth up to `reached`, and `path` locates the failure when
/// `reached < n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Level {
    pub reached: u32,
    pub path: Vec<String>,
}

impl Level {
    pub fn full(n: u32) -> Level {
        Level {
            reached: n,
            path: Vec::new(),
        }
    }

    /// Holds at depth 0 only.
    pub fn fail(reason: impl Into<String>) -> Level {
        Level {
            reached: 0,
            path: vec![reason.into()],
        }
    }

    /// One `▷` deeper.
    pub fn later(mut self) -> Level {
        self.reached += 1;
        self
    }

    pub fn under(mut self, seg: impl Into<String>) -> Level {
        if !self.path.is_empty() {
            self.path.insert(0, seg.into());
        }
        self
    }

    pub fn min(self, other: Level) -> Level {
        match self.reached.cmp(&other.reached) {
            std::cmp::Ordering::Less => self,
            std::cmp::Ordering::Greater => other,
            std::cmp::Ordering::Equal if self.path.is_empty() => other,
            std::cmp::Ordering::Equal => self,
        }
    }

    pub fn verdict(self, n: u32) -> Verdict {
        if self.reached >= n {
            Verdict::HoldsAt { depth: n }
        } else {
            Verdict::FailsAt {
                depth: self.reached + 1,
                path: self.path,
            }
        }
    }
}

/// Serializable report of one relational check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub relation: String,
    #[serde(rename = "type")]
    pub ty: String,
    pub depth: u32,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_depth: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample_path: Option<Vec<String>>,
}

impl Report {
    pub fn new(relation: &str, ty: &crate::syntax::Type, depth: u32, v: &Verdict) -> Report {
        let (verdict, failing_depth, counterexample_path) = match v {
            Verdict::HoldsAt { .. } => ("holds".to_string(), None, None),
            Verdict::FailsAt { depth, path } => {
                ("fails".to_string(), Some(*depth), Some(path.clone()))
            }
        };
        Report {
            relation: relation.to_string(),
            ty: ty.to_string(),
            depth,
            verdict,
            failing_depth,
            counterexample_path,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_turn_into_antitone_verdicts() {
        let l = Level::fail("here").later().under("unfold");
        assert_eq!(l.reached, 1);
        for n in 0..=1 {
            assert!(l.clone().verdict(n).holds());
        }
        for n in 2..6 {
            assert_eq!(
                l.clone().verdict(n),
                Verdict::FailsAt {
                    depth: 2,
                    path: vec!["unfold".into(), "here".into()]
                }
            );
        }
    }

    #[test]
    fn min_prefers_failures() {
        let a = Level::full(3);
        let b = Level::fail("x").later().later().later();
        assert_eq!(a.clone().min(b.clone()).path, vec!["x".to_string()]);
        assert_eq!(b.min(a).path, vec!["x".to_string()]);
    }

    #[test]
    fn report_json() {
        let v = Verdict::FailsAt {
            depth: 1,
            path: vec!["arg ()".into()],
        };
        let r = Report::new("bisim", &crate::syntax::Type::Unit, 5, &v);
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"relation":"bisim","type":"1","depth":5,"verdict":"fails","failing_depth":1,"counterexample_path":["arg ()"]}"#
        );
    }
}
