//! JSON exchange format for proof trees.
//!
//! Each node is an object with the fields `rule`, `args`, `conclusion` and
//! `premises`. Argument values are strings in the surface syntax, except
//! the axiom index, which is a number.
//!
//! | rule | args |
//! |------|------|
//! | `Hyp`, `Cut`, `LeftNot`, `RightNot` | `formula` |
//! | `LeftAnd`, `RightOr` | `kept`, `dropped` |
//! | `RightAnd`, `LeftOr` | `left`, `right` |
//! | `LeftForall`, `RightExists` | `binder`, `body`, `witness` |
//! | `RightForall`, `LeftExists` | `binder`, `body`, `eigenvariable` |
//! | `Weaken` | optional `added`, a one-formula sequent such as `"x |-"` |
//! | `ZeroLeaf`, `OneLeaf` | optional `context`, a one-formula sequent |
//! | `AxiomLeaf` | `index` |

use std::fmt;

use ol_core::syntax::{parse_annotated, print_annotated};
use ol_core::{parse_formula, parse_sequent, print_formula, print_sequent, AnnotatedFormula, Formula, Ident, ProofStep, Rule};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Node {
    rule: String,
    #[serde(default)]
    args: Map<String, Value>,
    conclusion: String,
    #[serde(default)]
    premises: Vec<Node>,
}

/// Why a proof file could not be turned into a proof tree.
#[derive(Debug)]
pub enum DecodeError {
    /// Not JSON, or not shaped like a proof tree.
    Malformed(serde_json::Error),
    /// A well-formed node whose contents do not make sense.
    Node { path: Vec<usize>, message: String },
}

impl fmt::Display for DecodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecodeError::Malformed(e) => write!(f, "malformed proof file: {}", e),
            DecodeError::Node { path, message } => {
                f.write_str("at root")?;
                for i in path {
                    write!(f, ".{}", i)?;
                }
                write!(f, ": {}", message)
            }
        }
    }
}

impl std::error::Error for DecodeError {}

pub fn to_json(p: &ProofStep) -> Value {
    let mut args = Map::new();
    let mut put = |k: &str, v: String| {
        args.insert(k.to_string(), Value::String(v));
    };
    match p.rule() {
        Rule::Hyp(f) | Rule::Cut(f) | Rule::LeftNot(f) | Rule::RightNot(f) => put("formula", print_formula(f)),
        Rule::LeftAnd { kept, dropped } | Rule::RightOr { kept, dropped } => {
            put("kept", print_formula(kept));
            put("dropped", print_formula(dropped));
        }
        Rule::RightAnd { left, right } | Rule::LeftOr { left, right } => {
            put("left", print_formula(left));
            put("right", print_formula(right));
        }
        Rule::LeftForall { binder, body, witness } | Rule::RightExists { binder, body, witness } => {
            put("binder", binder.to_string());
            put("body", print_formula(body));
            put("witness", print_formula(witness));
        }
        Rule::RightForall { binder, body, eigenvariable } | Rule::LeftExists { binder, body, eigenvariable } => {
            put("binder", binder.to_string());
            put("body", print_formula(body));
            put("eigenvariable", eigenvariable.to_string());
        }
        Rule::Weaken(added) => {
            if let Some(a) = added {
                put("added", print_annotated(a));
            }
        }
        Rule::ZeroLeaf(ctx) | Rule::OneLeaf(ctx) => {
            if let Some(a) = ctx {
                put("context", print_annotated(a));
            }
        }
        Rule::AxiomLeaf(i) => {
            args.insert("index".to_string(), Value::from(*i));
        }
    }
    let mut node = Map::new();
    node.insert("rule".into(), Value::String(p.rule().name().to_string()));
    node.insert("args".into(), Value::Object(args));
    node.insert("conclusion".into(), Value::String(print_sequent(p.conclusion())));
    node.insert("premises".into(), Value::Array(p.premises().iter().map(to_json).collect()));
    Value::Object(node)
}

pub fn to_string(p: &ProofStep) -> String {
    let mut s = serde_json::to_string_pretty(&to_json(p)).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn from_str(text: &str) -> Result<ProofStep, DecodeError> {
    let mut de = serde_json::Deserializer::from_str(text);
    de.disable_recursion_limit();
    let node = Node::deserialize(&mut de).map_err(DecodeError::Malformed)?;
    de.end().map_err(DecodeError::Malformed)?;
    let mut path = Vec::new();
    decode(&node, &mut path)
}

fn decode(node: &Node, path: &mut Vec<usize>) -> Result<ProofStep, DecodeError> {
    let fail = |path: &[usize], message: String| DecodeError::Node {
        path: path.to_vec(),
        message,
    };
    let rule = decode_rule(node).map_err(|m| fail(path, m))?;
    let conclusion = parse_sequent(&node.conclusion)
        .map_err(|e| fail(path, format!("conclusion: {}", e)))?
        .sequent();
    let mut premises = Vec::with_capacity(node.premises.len());
    for (i, child) in node.premises.iter().enumerate() {
        path.push(i);
        premises.push(decode(child, path)?);
        path.pop();
    }
    Ok(ProofStep::new(rule, conclusion, premises))
}

struct Args<'a>(&'a Map<String, Value>);

impl Args<'_> {
    fn text(&self, key: &str) -> Result<Option<&str>, String> {
        match self.0.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => Ok(Some(s)),
            Some(other) => Err(format!("argument `{}` must be a string, found {}", key, other)),
        }
    }

    fn required(&self, key: &str) -> Result<&str, String> {
        self.text(key)?.ok_or_else(|| format!("missing argument `{}`", key))
    }

    fn formula(&self, key: &str) -> Result<Formula, String> {
        parse_formula(self.required(key)?).map_err(|e| format!("argument `{}`: {}", key, e))
    }

    fn ident(&self, key: &str) -> Result<Ident, String> {
        let name = self.required(key)?.trim();
        if Ident::is_valid(name) {
            Ok(Ident::new(name))
        } else {
            Err(format!("argument `{}`: `{}` is not an identifier", key, name))
        }
    }

    fn annotated(&self, key: &str) -> Result<Option<AnnotatedFormula>, String> {
        match self.text(key)? {
            None => Ok(None),
            Some(t) => parse_annotated(t).map(Some).map_err(|e| format!("argument `{}`: {}", key, e)),
        }
    }

    fn index(&self, key: &str) -> Result<usize, String> {
        match self.0.get(key) {
            Some(Value::Number(n)) => n
                .as_u64()
                .and_then(|n| usize::try_from(n).ok())
                .ok_or_else(|| format!("argument `{}` must be a non-negative integer", key)),
            Some(_) => Err(format!("argument `{}` must be a number", key)),
            None => Err(format!("missing argument `{}`", key)),
        }
    }
}

fn decode_rule(node: &Node) -> Result<Rule, String> {
    let a = Args(&node.args);
    Ok(match node.rule.as_str() {
        "Hyp" => Rule::Hyp(a.formula("formula")?),
        "Cut" => Rule::Cut(a.formula("formula")?),
        "LeftNot" => Rule::LeftNot(a.formula("formula")?),
        "RightNot" => Rule::RightNot(a.formula("formula")?),
        "LeftAnd" => Rule::LeftAnd {
            kept: a.formula("kept")?,
            dropped: a.formula("dropped")?,
        },
        "RightOr" => Rule::RightOr {
            kept: a.formula("kept")?,
            dropped: a.formula("dropped")?,
        },
        "RightAnd" => Rule::RightAnd {
            left: a.formula("left")?,
            right: a.formula("right")?,
        },
        "LeftOr" => Rule::LeftOr {
            left: a.formula("left")?,
            right: a.formula("right")?,
        },
        "LeftForall" => Rule::LeftForall {
            binder: a.ident("binder")?,
            body: a.formula("body")?,
            witness: a.formula("witness")?,
        },
        "RightExists" => Rule::RightExists {
            binder: a.ident("binder")?,
            body: a.formula("body")?,
            witness: a.formula("witness")?,
        },
        "RightForall" => Rule::RightForall {
            binder: a.ident("binder")?,
            body: a.formula("body")?,
            eigenvariable: a.ident("eigenvariable")?,
        },
        "LeftExists" => Rule::LeftExists {
            binder: a.ident("binder")?,
            body: a.formula("body")?,
            eigenvariable: a.ident("eigenvariable")?,
        },
        "Weaken" => Rule::Weaken(a.annotated("added")?),
        "ZeroLeaf" => Rule::ZeroLeaf(a.annotated("context")?),
        "OneLeaf" => Rule::OneLeaf(a.annotated("context")?),
        "AxiomLeaf" => Rule::AxiomLeaf(a.index("index")?),
        other => return Err(format!("unknown rule `{}`", other)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ol_core::{check_proof, prove};

    #[test]
    fn round_trip_prover_output() {
        for goal in ["x & y |- x", "!(x | y) |- !x & !y", "x & !x |-", "|- 1", "0 |- x"] {
            let s = parse_sequent(goal).unwrap().sequent();
            let proof = prove(&s, &[]).proof().unwrap().clone();
            let back = from_str(&to_string(&proof)).unwrap();
            assert_eq!(to_json(&back), to_json(&proof));
            assert_eq!(check_proof(&back, &[]).conclusion(), Some(&s));
        }
    }

    #[test]
    fn unknown_rule_reports_path() {
        let text = r#"{"rule":"LeftNot","args":{"formula":"x"},"conclusion":"!x, x |-",
            "premises":[{"rule":"Hype","args":{"formula":"x"},"conclusion":"x |- x","premises":[]}]}"#;
        match from_str(text) {
            Err(DecodeError::Node { path, message }) => {
                assert_eq!(path, vec![0]);
                assert!(message.contains("Hype"));
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn shape_errors_are_malformed() {
        assert!(matches!(from_str("{"), Err(DecodeError::Malformed(_))));
        assert!(matches!(from_str(r#"{"rule":"Hyp"}"#), Err(DecodeError::Malformed(_))));
        assert!(matches!(from_str(r#"[1, 2]"#), Err(DecodeError::Malformed(_))));
    }
}
