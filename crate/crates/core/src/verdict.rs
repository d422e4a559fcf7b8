use std::fmt;

/// Outcome of a mechanical check of one claimed fact.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    /// The claim holds; `margin` is the slack by which it holds (larger is safer).
    Holds { margin: f64 },
    /// The claim fails.
    Fails { margin: f64, detail: String },
    /// The claim's hypotheses do not apply to this input.
    Inapplicable(String),
}

impl Verdict {
    pub fn from_margin(margin: f64, detail: impl FnOnce() -> String) -> Verdict {
        if margin >= 0.0 {
            Verdict::Holds { margin }
        } else {
            Verdict::Fails {
                margin,
                detail: detail(),
            }
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }

    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails { .. })
    }

    pub fn margin(&self) -> Option<f64> {
        match self {
            Verdict::Holds { margin } | Verdict::Fails { margin, .. } => Some(*margin),
            Verdict::Inapplicable(_) => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds { margin } => write!(f, "holds (margin {margin:.3e})"),
            Verdict::Fails { margin, detail } => write!(f, "FAILS (margin {margin:.3e}): {detail}"),
            Verdict::Inapplicable(why) => write!(f, "inapplicable: {why}"),
        }
    }
}
