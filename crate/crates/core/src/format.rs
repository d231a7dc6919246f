//! Derivation files.
//!
//! ```text
//! (derivation g3c (hyp "p" "q")* (node Rimp (seq "" "p -> p") (node Rf (seq "p" "p"))))
//! (derivation scinf (env "defs.conn" "<sha256>") (node RF (seq "p" "p")))
//! (derivation nc (premises "p & q")
//!   (node andE1 (fml "p") (assume u "p & q")))
//! ```
//!
//! Discharging NC rules carry `(discharges u v)`, with `_` for an empty slot.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::connectives::{DefError, Registry};
use crate::derivation::{Derivation, Rejection};
use crate::g3c::{G3Derivation, G3Error, G3Rule, G3Sequent};
use crate::nc::{unknown_rule_message, NcDerivation, NcRule, NcStep};
use crate::sc_inf::{ScDerivation, ScRule};
use crate::sexpr::{Sexp, SexpError};
use crate::syntax::{context_text, parse_rexpr_list, parse_rexpr_with, Formula, ParseError, RSequent, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Calculus {
    G3c,
    Scinf,
    Nc,
}

impl Calculus {
    pub fn tag(self) -> &'static str {
        match self {
            Calculus::G3c => "g3c",
            Calculus::Scinf => "scinf",
            Calculus::Nc => "nc",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        [Calculus::G3c, Calculus::Scinf, Calculus::Nc].into_iter().find(|c| c.tag() == tag)
    }
}

/// The connective-definition file a derivation was checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvRef {
    pub path: String,
    pub hash: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivationFile {
    G3c { hyps: Vec<G3Sequent>, tree: G3Derivation },
    Scinf { env: Option<EnvRef>, tree: ScDerivation },
    Nc { premises: Vec<Formula>, tree: NcDerivation },
}

impl DerivationFile {
    pub fn calculus(&self) -> Calculus {
        match self {
            DerivationFile::G3c { .. } => Calculus::G3c,
            DerivationFile::Scinf { .. } => Calculus::Scinf,
            DerivationFile::Nc { .. } => Calculus::Nc,
        }
    }
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Sexp(#[from] SexpError),
    #[error("malformed derivation file: {0}")]
    Shape(String),
    #[error("`{text}`: {err}")]
    Parse { text: String, err: ParseError },
    #[error(transparent)]
    G3(#[from] G3Error),
    /// A well-formed file naming a rule the calculus does not have.
    #[error("{0}")]
    Rejected(Rejection),
    #[error("{path}: {err}")]
    Io { path: PathBuf, err: std::io::Error },
    #[error("{path}: {err}")]
    Defs { path: PathBuf, err: DefError },
    #[error("environment hash mismatch: file records {recorded}, definitions hash to {actual}")]
    EnvHash { recorded: String, actual: String },
    #[error("file is tagged `{found}`, expected `{expected}`")]
    Calculus { expected: &'static str, found: &'static str },
}

fn shape<T>(msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Shape(msg.into()))
}

fn seq_form(ctx: String, succ: String) -> Sexp {
    Sexp::List(vec![Sexp::sym("seq"), Sexp::string(ctx), Sexp::string(succ)])
}

fn rsequent_form(s: &RSequent) -> Sexp {
    seq_form(context_text(&s.context), s.succedent.to_string())
}

fn node_form<R, J>(d: &Derivation<R, J>, head: &dyn Fn(&Derivation<R, J>) -> Vec<Sexp>) -> Sexp {
    let mut items = head(d);
    items.extend(d.premises.iter().map(|p| node_form(p, head)));
    Sexp::List(items)
}

fn file_form(tag: Calculus, header: Vec<Sexp>, tree: Sexp) -> String {
    let mut items = vec![Sexp::sym("derivation"), Sexp::sym(tag.tag())];
    items.extend(header);
    items.push(tree);
    Sexp::List(items).pretty()
}

pub fn write_g3c(tree: &G3Derivation, hyps: &[G3Sequent]) -> String {
    let header = hyps
        .iter()
        .map(|h| {
            let s = h.to_rsequent();
            Sexp::List(vec![
                Sexp::sym("hyp"),
                Sexp::string(context_text(&s.context)),
                Sexp::string(s.succedent.to_string()),
            ])
        })
        .collect();
    let tree = node_form(tree, &|n| {
        vec![Sexp::sym("node"), Sexp::sym(n.rule.name()), rsequent_form(&n.conclusion.to_rsequent())]
    });
    file_form(Calculus::G3c, header, tree)
}

pub fn write_scinf(tree: &ScDerivation, env: Option<&EnvRef>) -> String {
    let header = env
        .map(|e| Sexp::List(vec![Sexp::sym("env"), Sexp::string(e.path.clone()), Sexp::string(e.hash.clone())]))
        .into_iter()
        .collect();
    let tree = node_form(tree, &|n| vec![Sexp::sym("node"), Sexp::sym(n.rule.name()), rsequent_form(&n.conclusion)]);
    file_form(Calculus::Scinf, header, tree)
}

pub fn write_nc(tree: &NcDerivation, premises: &[Formula]) -> String {
    let mut header = Vec::new();
    if !premises.is_empty() {
        let mut items = vec![Sexp::sym("premises")];
        items.extend(premises.iter().map(|f| Sexp::string(f.to_string())));
        header.push(Sexp::List(items));
    }
    let tree = node_form(tree, &|n| match &n.rule.rule {
        NcRule::Assume(label) => {
            vec![Sexp::sym("assume"), Sexp::sym(label.clone()), Sexp::string(n.conclusion.to_string())]
        }
        rule => {
            let mut items = vec![
                Sexp::sym("node"),
                Sexp::sym(rule.name()),
                Sexp::List(vec![Sexp::sym("fml"), Sexp::string(n.conclusion.to_string())]),
            ];
            if !n.rule.discharges.is_empty() {
                let mut d = vec![Sexp::sym("discharges")];
                d.extend(n.rule.discharges.iter().map(|l| Sexp::sym(l.as_deref().unwrap_or("_"))));
                items.push(Sexp::List(d));
            }
            items
        }
    });
    file_form(Calculus::Nc, header, tree)
}

/// Header of a derivation file: calculus tag and recorded environment.
pub fn read_header(text: &str) -> Result<(Calculus, Option<EnvRef>), FormatError> {
    let top = Sexp::parse(text)?;
    let (calc, header, _) = split_file(&top)?;
    let mut env = None;
    for h in header {
        if let Some(("env", args)) = h.as_form() {
            env = Some(env_ref(args)?);
        }
    }
    Ok((calc, env))
}

fn env_ref(args: &[Sexp]) -> Result<EnvRef, FormatError> {
    match args {
        [p, h] => match (p.as_str(), h.as_str()) {
            (Some(p), Some(h)) => Ok(EnvRef { path: p.to_string(), hash: h.to_string() }),
            _ => shape("(env \"path\" \"sha256\") expects two strings"),
        },
        _ => shape("(env \"path\" \"sha256\") expects two strings"),
    }
}

fn split_file(top: &Sexp) -> Result<(Calculus, &[Sexp], &Sexp), FormatError> {
    let Some(("derivation", rest)) = top.as_form() else {
        return shape("expected `(derivation <calculus> ...)`");
    };
    let Some((tag, rest)) = rest.split_first() else {
        return shape("missing calculus tag");
    };
    let calc = tag
        .as_symbol()
        .and_then(Calculus::from_tag)
        .ok_or_else(|| FormatError::Shape(format!("unknown calculus `{tag}`; expected g3c, scinf or nc")))?;
    let Some((tree, header)) = rest.split_last() else {
        return shape("missing derivation tree");
    };
    Ok((calc, header, tree))
}

/// Reads a derivation file; `env` supplies the connectives for `scinf`
/// trees.
pub fn read_derivation(text: &str, env: &Registry) -> Result<DerivationFile, FormatError> {
    let top = Sexp::parse(text)?;
    let (calc, header, tree) = split_file(&top)?;
    let mut path = Vec::new();
    match calc {
        Calculus::G3c => {
            let mut hyps = Vec::new();
            for h in header {
                match h.as_form() {
                    Some(("hyp", args)) => {
                        let s = seq_args(args, "hyp", env)?;
                        hyps.push(G3Sequent::from_rsequent(&s)?);
                    }
                    _ => return shape(format!("unexpected g3c header item `{h}`")),
                }
            }
            let tree = read_g3c_node(tree, &mut path)?;
            Ok(DerivationFile::G3c { hyps, tree })
        }
        Calculus::Scinf => {
            let mut recorded = None;
            for h in header {
                match h.as_form() {
                    Some(("env", args)) => recorded = Some(env_ref(args)?),
                    _ => return shape(format!("unexpected scinf header item `{h}`")),
                }
            }
            let tree = read_sc_node(tree, env)?;
            Ok(DerivationFile::Scinf { env: recorded, tree })
        }
        Calculus::Nc => {
            let mut premises = Vec::new();
            for h in header {
                match h.as_form() {
                    Some(("premises", args)) => {
                        for a in args {
                            let Some(t) = a.as_str() else { return shape("premises are strings") };
                            premises.push(formula(t)?);
                        }
                    }
                    _ => return shape(format!("unexpected nc header item `{h}`")),
                }
            }
            let tree = read_nc_node(tree, &mut path)?;
            Ok(DerivationFile::Nc { premises, tree })
        }
    }
}

fn formula(text: &str) -> Result<Formula, FormatError> {
    crate::syntax::parse_formula(text).map_err(|err| FormatError::Parse { text: text.to_string(), err })
}

fn seq_args(args: &[Sexp], what: &str, sig: &dyn Signature) -> Result<RSequent, FormatError> {
    let [ctx, succ] = args else {
        return shape(format!("({what} \"context\" \"succedent\") expects two strings"));
    };
    let (Some(ctx), Some(succ)) = (ctx.as_str(), succ.as_str()) else {
        return shape(format!("({what} \"context\" \"succedent\") expects two strings"));
    };
    let context = parse_rexpr_list(ctx, sig).map_err(|err| FormatError::Parse { text: ctx.to_string(), err })?;
    let succedent = parse_rexpr_with(succ, sig).map_err(|err| FormatError::Parse { text: succ.to_string(), err })?;
    Ok(RSequent::new(context, succedent))
}

/// `(node <rule> (seq ..) child*)`.
fn node_parts(s: &Sexp) -> Result<(&str, &[Sexp], &[Sexp]), FormatError> {
    let Some(("node", rest)) = s.as_form() else {
        return shape(format!("expected `(node ...)`, found `{s}`"));
    };
    let [rule, judgement, children @ ..] = rest else {
        return shape("`node` needs a rule name and a judgement");
    };
    let Some(rule) = rule.as_symbol() else {
        return shape(format!("rule name must be a symbol, found `{rule}`"));
    };
    let Some(("seq", seq)) = judgement.as_form() else {
        return shape(format!("expected `(seq ...)`, found `{judgement}`"));
    };
    Ok((rule, seq, children))
}

fn read_g3c_node(s: &Sexp, path: &mut Vec<usize>) -> Result<G3Derivation, FormatError> {
    let (rule, seq, children) = node_parts(s)?;
    let conclusion = G3Sequent::from_rsequent(&seq_args(seq, "seq", &crate::syntax::NoConnectives)?)?;
    let rule = G3Rule::from_name(rule).ok_or_else(|| {
        FormatError::Rejected(Rejection { path: path.clone(), reason: format!("unknown G3C rule `{rule}`") })
    })?;
    let mut premises = Vec::with_capacity(children.len());
    for (i, c) in children.iter().enumerate() {
        path.push(i);
        premises.push(read_g3c_node(c, path)?);
        path.pop();
    }
    Ok(Derivation::node(rule, conclusion, premises))
}

fn read_sc_node(s: &Sexp, env: &Registry) -> Result<ScDerivation, FormatError> {
    let (rule, seq, children) = node_parts(s)?;
    let conclusion = seq_args(seq, "seq", env)?;
    let premises = children.iter().map(|c| read_sc_node(c, env)).collect::<Result<_, _>>()?;
    Ok(Derivation::node(ScRule::from_name(rule), conclusion, premises))
}

fn read_nc_node(s: &Sexp, path: &mut Vec<usize>) -> Result<NcDerivation, FormatError> {
    match s.as_form() {
        Some(("assume", [label, f])) => {
            let (Some(label), Some(f)) = (label.as_symbol(), f.as_str()) else {
                return shape("(assume <label> \"formula\")");
            };
            Ok(crate::nc::assume(label, formula(f)?))
        }
        Some(("node", [rule, fml, rest @ ..])) => {
            let Some(name) = rule.as_symbol() else {
                return shape(format!("rule name must be a symbol, found `{rule}`"));
            };
            let Some(("fml", [f])) = fml.as_form() else {
                return shape(format!("expected `(fml \"formula\")`, found `{fml}`"));
            };
            let Some(f) = f.as_str() else { return shape("(fml \"formula\")") };
            let conclusion = formula(f)?;
            let (discharges, children) = match rest.split_first() {
                Some((first, tail)) if matches!(first.as_form(), Some(("discharges", _))) => {
                    let labels = first.as_form().unwrap().1;
                    let mut out = Vec::new();
                    for l in labels {
                        let Some(l) = l.as_symbol() else { return shape("discharge labels are symbols") };
                        out.push((l != "_").then(|| l.to_string()));
                    }
                    (out, tail)
                }
                _ => (Vec::new(), rest),
            };
            let rule = NcRule::from_name(name).ok_or_else(|| {
                FormatError::Rejected(Rejection { path: path.clone(), reason: unknown_rule_message(name) })
            })?;
            let mut premises = Vec::with_capacity(children.len());
            for (i, c) in children.iter().enumerate() {
                path.push(i);
                premises.push(read_nc_node(c, path)?);
                path.pop();
            }
            Ok(Derivation::node(NcStep { rule, discharges }, conclusion, premises))
        }
        _ => shape(format!("expected `(node ...)` or `(assume ...)`, found `{s}`")),
    }
}

fn read_text(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|err| FormatError::Io { path: path.to_path_buf(), err })
}

/// Loads a connective-definition file.
pub fn load_registry(path: &Path) -> Result<Registry, FormatError> {
    let text = read_text(path)?;
    Registry::from_text(&text).map_err(|err| FormatError::Defs { path: path.to_path_buf(), err })
}

/// Reads a derivation file from disk. Connectives come from `defs` when
/// given, else from the file's `env` header, resolved against the file's
/// directory. A recorded hash must match the definitions used.
pub fn load_derivation(path: &Path, defs: Option<&Path>) -> Result<(DerivationFile, Registry), FormatError> {
    let text = read_text(path)?;
    let (_, recorded) = read_header(&text)?;
    let env = match (defs, &recorded) {
        (Some(d), _) => load_registry(d)?,
        (None, Some(r)) => {
            let base = path.parent().unwrap_or(Path::new("."));
            load_registry(&base.join(&r.path))?
        }
        (None, None) => Registry::default(),
    };
    if let Some(r) = &recorded {
        let actual = env.env_hash();
        if actual != r.hash {
            return Err(FormatError::EnvHash { recorded: r.hash.clone(), actual });
        }
    }
    Ok((read_derivation(&text, &env)?, env))
}
