use std::fmt;

use super::{Formula, RExpr, RSequent};

// Binding strength: `->` < `|` < `&` < prefix/atomic.
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const ATOMIC: u8 = 4;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Imp(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => ATOMIC,
    }
}

fn write_formula(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let paren = level(f) < min;
    if paren {
        out.write_str("(")?;
    }
    match f {
        Formula::Atom(p) => out.write_str(p)?,
        Formula::Neg(a) => {
            out.write_str("~")?;
            write_formula(a, ATOMIC, out)?;
        }
        Formula::And(a, b) => {
            write_formula(a, AND, out)?;
            out.write_str(" & ")?;
            write_formula(b, ATOMIC, out)?;
        }
        Formula::Or(a, b) => {
            write_formula(a, OR, out)?;
            out.write_str(" | ")?;
            write_formula(b, AND, out)?;
        }
        Formula::Imp(a, b) => {
            write_formula(a, OR, out)?;
            out.write_str(" -> ")?;
            write_formula(b, IMP, out)?;
        }
        Formula::App(name, args) => {
            out.write_str(name)?;
            out.write_str("(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.write_str(", ")?;
                }
                write_formula(a, 0, out)?;
            }
            out.write_str(")")?;
        }
    }
    if paren {
        out.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, 0, f)
    }
}

fn write_list(items: &[RExpr], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, s) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{s}")?;
    }
    Ok(())
}

impl fmt::Display for RExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RExpr::Fml(a) => write!(f, "{a}"),
            RExpr::Ref(r) => match r.body() {
                RExpr::Fml(a) if level(a) == ATOMIC => write!(f, "-{a}"),
                RExpr::Fml(a) => write!(f, "-({a})"),
                other => write!(f, "-{other}"),
            },
            RExpr::Seq(ctx, succ) => {
                f.write_str("(")?;
                write_list(ctx, f)?;
                if ctx.is_empty() {
                    write!(f, "=> {succ})")
                } else {
                    write!(f, " => {succ})")
                }
            }
        }
    }
}

/// Renders a context as comma-separated text.
pub fn context_text(ctx: &[RExpr]) -> String {
    ctx.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for RSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(&self.context, f)?;
        if self.context.is_empty() {
            write!(f, "=> {}", self.succedent)
        } else {
            write!(f, " => {}", self.succedent)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::*;

    fn a(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn canonical_sequent_expression() {
        let e = RExpr::seq(vec![RExpr::atom("p"), RExpr::atom("q")], RExpr::atom("r"));
        assert_eq!(e.to_string(), "(p, q => r)");
        assert_eq!(RExpr::seq(vec![], RExpr::atom("r")).to_string(), "(=> r)");
    }

    #[test]
    fn refuted_negation() {
        let e = RExpr::Fml(Formula::neg(a("p"))).neg();
        assert_eq!(e.to_string(), "-~p");
    }

    #[test]
    fn minimal_brackets() {
        assert_eq!(Formula::imp(Formula::and(a("p"), a("q")), a("r")).to_string(), "p & q -> r");
        assert_eq!(Formula::imp(Formula::imp(a("p"), a("q")), a("r")).to_string(), "(p -> q) -> r");
        assert_eq!(Formula::and(a("p"), Formula::and(a("q"), a("r"))).to_string(), "p & (q & r)");
        assert_eq!(Formula::neg(Formula::or(a("p"), a("q"))).to_string(), "~(p | q)");
        assert_eq!(RExpr::Fml(Formula::or(a("p"), a("q"))).neg().to_string(), "-(p | q)");
    }

    #[test]
    fn sequent_display() {
        let s = RSequent::new(vec![], RExpr::atom("p"));
        assert_eq!(s.to_string(), "=> p");
        assert_eq!(parse_sequent(&s.to_string()).unwrap(), s);
    }
}
