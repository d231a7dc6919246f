//! Rule-labelled trees shared by every calculus in the crate.

use std::fmt;

/// A derivation: a rule instance with its conclusion and premise subtrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation<R, J> {
    pub rule: R,
    pub conclusion: J,
    pub premises: Vec<Derivation<R, J>>,
}

impl<R, J> Derivation<R, J> {
    pub fn leaf(rule: R, conclusion: J) -> Self {
        Derivation { rule, conclusion, premises: Vec::new() }
    }

    pub fn node(rule: R, conclusion: J, premises: Vec<Derivation<R, J>>) -> Self {
        Derivation { rule, conclusion, premises }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Derivation::height).max().unwrap_or(0)
    }

    /// The node at `path` (child indices from the root).
    pub fn at(&self, path: &[usize]) -> Option<&Self> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.premises.get(i)?.at(rest),
        }
    }

    pub fn at_mut(&mut self, path: &[usize]) -> Option<&mut Self> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.premises.get_mut(i)?.at_mut(rest),
        }
    }

    /// Paths of all nodes in pre-order.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.collect_paths(&mut cur, &mut out);
        out
    }

    fn collect_paths(&self, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for (i, p) in self.premises.iter().enumerate() {
            cur.push(i);
            p.collect_paths(cur, out);
            cur.pop();
        }
    }

    /// Post-order walk reporting the first node for which `check` fails:
    /// premises are checked left to right before the node itself.
    pub fn first_failure<E>(&self, check: &mut dyn FnMut(&Self) -> Result<(), E>) -> Option<(Vec<usize>, E)> {
        let mut path = Vec::new();
        self.first_failure_at(&mut path, check)
    }

    fn first_failure_at<E>(
        &self,
        path: &mut Vec<usize>,
        check: &mut dyn FnMut(&Self) -> Result<(), E>,
    ) -> Option<(Vec<usize>, E)> {
        for (i, p) in self.premises.iter().enumerate() {
            path.push(i);
            if let Some(found) = p.first_failure_at(path, check) {
                return Some(found);
            }
            path.pop();
        }
        check(self).err().map(|e| (path.clone(), e))
    }
}

/// Why a checker refused a derivation, and where.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    /// Child indices from the root to the offending node.
    pub path: Vec<usize>,
    pub reason: String,
}

impl Rejection {
    pub fn at_root(reason: impl Into<String>) -> Self {
        Rejection { path: Vec::new(), reason: reason.into() }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(ToString::to_string).collect();
        write!(f, "node [{}]: {}", path.join("."), self.reason)
    }
}

impl std::error::Error for Rejection {}

/// Result of running a checker: `Ok(())` is acceptance.
pub type Verdict = Result<(), Rejection>;

/// Turns a per-node check into a whole-tree verdict.
pub(crate) fn verdict<R, J>(
    d: &Derivation<R, J>,
    check: &mut dyn FnMut(&Derivation<R, J>) -> Result<(), String>,
) -> Verdict {
    match d.first_failure(check) {
        None => Ok(()),
        Some((path, reason)) => Err(Rejection { path, reason }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_is_leftmost_innermost() {
        let d = Derivation::node(
            0,
            "root",
            vec![Derivation::node(1, "a", vec![Derivation::leaf(2, "a0")]), Derivation::leaf(3, "b")],
        );
        let mut fails = |n: &Derivation<i32, &str>| if n.rule >= 1 { Err(n.rule) } else { Ok(()) };
        let (path, rule) = d.first_failure(&mut fails).unwrap();
        assert_eq!(path, vec![0, 0]);
        assert_eq!(rule, 2);
        assert_eq!(d.paths().len(), 4);
        assert_eq!(d.at(&[1]).unwrap().conclusion, "b");
        assert_eq!(d.height(), 3);
    }
}
