// SPDX-License-Identifier: Apache-2.0

//! Command-line driver. [`run`] parses arguments and returns the exit code
//! together with what should be written to stdout and stderr.
//!
//! Exit codes: 0 success, 1 unparsable input, 2 domain error, 3 a bounded
//! search was inconclusive.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::base_field::{is_fundamental, Field, KElement};
use crate::correspondence::{
    compose, forms_equivalent, identity_form, inverse_form, ocl_structure_q, phi, psi, tpd_sign_check,
};
use crate::error::Error;
use crate::extension::{make_extension, Extension};
use crate::forms::{enumerate_classes_q, is_tpd, reduce_form_q, QuadraticForm};
use crate::ideals::{Equivalence, OrientedIdeal};
use crate::json::{ideal_from_json, parse_form};

#[derive(Parser, Debug)]
#[command(
    name = "qfc",
    version,
    about = "Quadratic forms and oriented ideal classes over quadratic extensions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Base field tag: q, qi, qsqrt2, qsqrt5, qsqrt13.
    #[arg(long, default_value = "q")]
    base: String,
    /// Discriminant D as an element of O_K, e.g. -23 or -2-w.
    #[arg(long, allow_hyphen_values = true)]
    d: String,
    /// Search bound for inconclusive equivalence tests.
    #[arg(long, env = "QFC_BOUND", default_value_t = 1000)]
    bound: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Form attached to an oriented ideal.
    Phi {
        #[command(flatten)]
        common: Common,
        /// Ideal JSON, inline or a file path.
        #[arg(long)]
        ideal: String,
    },
    /// Oriented ideal attached to a form.
    Psi {
        #[command(flatten)]
        common: Common,
        /// Form as `a,b,c` or JSON.
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// Composition of two forms.
    Compose {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        f1: String,
        #[arg(long, allow_hyphen_values = true)]
        f2: String,
        /// Also test whether the result lies in the class of this form.
        #[arg(long, allow_hyphen_values = true)]
        expect: Option<String>,
    },
    /// The neutral form x^2 + wxy + zy^2.
    Identity {
        #[command(flatten)]
        common: Common,
    },
    /// The inverse form (a, -b, c).
    Inverse {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// Reduced forms and their composition table (base q).
    Classtable {
        #[command(flatten)]
        common: Common,
    },
    /// Case, class number and oriented class number (base q).
    Oclcheck {
        #[command(flatten)]
        common: Common,
    },
    /// Positivity conditions of an oriented ideal at each real embedding.
    Tpdcheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: String,
    },
    /// Whether D is fundamental.
    Fundcheck {
        #[command(flatten)]
        common: Common,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    name: &'static str,
    json: Value,
    text: Vec<String>,
    code: i32,
}

enum Failure {
    Parse(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Parse(m),
            other => Failure::Domain(other),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let format = common(&cli.command).format;
    match dispatch(&cli.command) {
        Ok(r) => {
            let stdout = match format {
                Format::Json => {
                    let mut v = json!({ "command": r.name });
                    merge(&mut v, r.json);
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
                }
                Format::Text => r.text.iter().map(|l| format!("{l}\n")).collect(),
            };
            let stderr = if r.code == 3 {
                "bounded search exhausted without a decision\n".to_string()
            } else {
                String::new()
            };
            Outcome {
                code: r.code,
                stdout,
                stderr,
            }
        }
        Err(Failure::Parse(m)) => Outcome {
            code: 1,
            stdout: error_object(format, "ParseError", &m),
            stderr: format!("error: {m}\n"),
        },
        Err(Failure::Domain(e)) => Outcome {
            code: 2,
            stdout: error_object(format, e.kind(), &e.to_string()),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn error_object(format: Format, kind: &str, message: &str) -> String {
    match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({ "error": { "kind": kind, "message": message } })).expect("json")
        ),
        Format::Text => format!("error[{kind}]: {message}\n"),
    }
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn common(c: &Command) -> &Common {
    match c {
        Command::Phi { common, .. }
        | Command::Psi { common, .. }
        | Command::Compose { common, .. }
        | Command::Identity { common }
        | Command::Inverse { common, .. }
        | Command::Classtable { common }
        | Command::Oclcheck { common }
        | Command::Tpdcheck { common, .. }
        | Command::Fundcheck { common } => common,
    }
}

fn field_and_d(c: &Common) -> Res<(Field, KElement)> {
    let f = Field::from_tag(&c.base).map_err(|e| Failure::Parse(e.to_string()))?;
    let d = KElement::parse(f, &c.d)?;
    Ok((f, d))
}

fn extension(c: &Common) -> Res<Extension> {
    let (f, d) = field_and_d(c)?;
    Ok(make_extension(f, d)?)
}

fn read_ideal(ext: &Extension, src: &str) -> Res<OrientedIdeal> {
    let t = src.trim();
    let text = if t.starts_with('{') {
        t.to_string()
    } else {
        std::fs::read_to_string(t).map_err(|e| Failure::Parse(format!("cannot read `{t}`: {e}")))?
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Parse(e.to_string()))?;
    // a full report from `psi` carries the ideal under "ideal"
    let v = v.get("ideal").filter(|_| v.get("alpha").is_none()).unwrap_or(&v);
    Ok(ideal_from_json(ext, v)?)
}

fn form_json(q: &QuadraticForm) -> Value {
    json!({ "a": q.a, "b": q.b, "c": q.c, "text": q.to_string(), "pretty": q.pretty() })
}

fn ideal_text(o: &OrientedIdeal) -> String {
    let signs: Vec<String> = o
        .eps()
        .iter()
        .map(|s| if *s > 0 { "+1".into() } else { "-1".into() })
        .collect();
    format!("[{}, {}]; ({})", o.basis().alpha, o.basis().beta, signs.join(","))
}

fn dispatch(cmd: &Command) -> Res<Report> {
    match cmd {
        Command::Phi { common, ideal } => {
            let ext = extension(common)?;
            let a = read_ideal(&ext, ideal)?;
            let q = phi(&a)?;
            Ok(Report {
                name: "phi",
                json: json!({ "extension": ext, "form": form_json(&q) }),
                text: vec![q.pretty()],
                code: 0,
            })
        }
        Command::Psi { common, form } => {
            let ext = extension(common)?;
            let q = parse_form(ext.base(), form)?;
            let a = psi(&q, &ext)?;
            Ok(Report {
                name: "psi",
                json: json!({ "extension": ext, "ideal": a }),
                text: vec![ideal_text(&a)],
                code: 0,
            })
        }
        Command::Compose { common, f1, f2, expect } => {
            let ext = extension(common)?;
            let f = ext.base();
            let (q1, q2) = (parse_form(f, f1)?, parse_form(f, f2)?);
            let q = compose(&q1, &q2, &ext)?;
            let mut out = json!({ "extension": ext, "form": form_json(&q) });
            let mut text = vec![q.pretty()];
            if f == Field::Q && ext.d.c0() < &num_traits::Zero::zero() {
                let r = reduce_form_q(&q)?;
                text.push(format!("reduced: {}", r.pretty()));
                out["reduced"] = form_json(&r);
            }
            let mut code = 0;
            if let Some(e) = expect {
                let target = parse_form(f, e)?;
                let (verdict, gamma) = match forms_equivalent(&q, &target, &ext, common.bound)? {
                    Equivalence::Equivalent(g) => ("equivalent", Some(g)),
                    Equivalence::NotEquivalent => ("not_equivalent", None),
                    Equivalence::Unknown => {
                        code = 3;
                        ("unknown", None)
                    }
                };
                text.push(format!("expected class: {verdict}"));
                out["expect"] = json!({ "form": form_json(&target), "result": verdict, "gamma": gamma });
            }
            Ok(Report {
                name: "compose",
                json: out,
                text,
                code,
            })
        }
        Command::Identity { common } => {
            let ext = extension(common)?;
            let q = identity_form(&ext);
            Ok(Report {
                name: "identity",
                json: json!({ "extension": ext, "form": form_json(&q) }),
                text: vec![q.pretty()],
                code: 0,
            })
        }
        Command::Inverse { common, form } => {
            let ext = extension(common)?;
            let q = inverse_form(&parse_form(ext.base(), form)?)?;
            Ok(Report {
                name: "inverse",
                json: json!({ "extension": ext, "form": form_json(&q) }),
                text: vec![q.pretty()],
                code: 0,
            })
        }
        Command::Classtable { common } => classtable(common),
        Command::Oclcheck { common } => {
            let (f, d) = field_and_d(common)?;
            if f != Field::Q {
                return Err(Error::WrongBase.into());
            }
            let r = ocl_structure_q(&d)?;
            let consistent = r.ocl_order == r.expected_order();
            let mut text = vec![
                format!("case: {}", r.case),
                format!("h: {}", r.h),
                format!("ocl_order: {}", r.ocl_order),
            ];
            if let (Some(u), Some(n)) = (&r.fundamental_unit, r.unit_norm) {
                text.push(format!("fundamental unit: {u} (norm {n})"));
            }
            text.push(format!("consistent: {consistent}"));
            let mut v = serde_json::to_value(&r).expect("json");
            v["expected_order"] = json!(r.expected_order());
            v["consistent"] = json!(consistent);
            Ok(Report {
                name: "oclcheck",
                json: v,
                text,
                code: 0,
            })
        }
        Command::Tpdcheck { common, ideal } => {
            let ext = extension(common)?;
            let a = read_ideal(&ext, ideal)?;
            let r = ext.base().r();
            let triples = (0..r).map(|i| tpd_sign_check(&a, i)).collect::<Result<Vec<_>, _>>()?;
            let tpd = is_tpd(&phi(&a)?)?;
            let eps_pos = a.eps().all_positive();
            let agree = triples.iter().all(|&(x, y, z)| x == y && y == z) && tpd == eps_pos;
            let mut text: Vec<String> = triples
                .iter()
                .enumerate()
                .map(|(i, t)| format!("embedding {i}: leading {} det {} im {}", t.0, t.1, t.2))
                .collect();
            text.push(format!("totally positive definite: {tpd}"));
            text.push(format!("agree: {agree}"));
            let emb: Vec<Value> = triples
                .iter()
                .map(|t| json!({ "leading_positive": t.0, "det_positive": t.1, "im_positive": t.2 }))
                .collect();
            Ok(Report {
                name: "tpdcheck",
                json: json!({ "embeddings": emb, "tpd": tpd, "eps_positive": eps_pos, "agree": agree }),
                text,
                code: 0,
            })
        }
        Command::Fundcheck { common } => {
            let (f, d) = field_and_d(common)?;
            let fund = is_fundamental(&d)?;
            let mut v = json!({ "base": f.tag(), "D": d, "fundamental": fund });
            let mut text = vec![format!("fundamental: {fund}")];
            if fund {
                let ext = make_extension(f, d)?;
                v["w"] = json!(ext.w);
                v["z"] = json!(ext.z);
                text.push(format!("w: {}", ext.w));
                text.push(format!("z: {}", ext.z));
            }
            Ok(Report {
                name: "fundcheck",
                json: v,
                text,
                code: 0,
            })
        }
    }
}

fn classtable(common: &Common) -> Res<Report> {
    let ext = extension(common)?;
    if ext.base() != Field::Q {
        return Err(Error::WrongBase.into());
    }
    let negative = ext.d.c0() < &num_traits::Zero::zero();
    if !negative {
        // representatives from the ideal side; no reduction theory here
        let r = ocl_structure_q(&ext.d)?;
        let forms = r
            .class_reps
            .iter()
            .map(|b| phi(&OrientedIdeal::from_basis(&ext, b.clone())?))
            .collect::<Result<Vec<_>, _>>()?;
        let text = forms.iter().map(|q| q.pretty()).collect();
        return Ok(Report {
            name: "classtable",
            json: json!({ "extension": ext, "classes": forms.iter().map(form_json).collect::<Vec<_>>(), "table": Value::Null }),
            text,
            code: 0,
        });
    }
    let forms = enumerate_classes_q(&ext.d)?;
    let mut table = Vec::with_capacity(forms.len());
    for x in &forms {
        let mut row = Vec::with_capacity(forms.len());
        for y in &forms {
            let r = reduce_form_q(&compose(x, y, &ext)?)?;
            let idx = forms.iter().position(|f| *f == r).expect("reduced forms are listed");
            row.push(idx);
        }
        table.push(row);
    }
    let identity = reduce_form_q(&identity_form(&ext))?;
    let id_idx = forms.iter().position(|f| *f == identity).expect("identity is listed");
    let mut text: Vec<String> = forms
        .iter()
        .enumerate()
        .map(|(i, q)| format!("{i}: {}", q.pretty()))
        .collect();
    text.push(format!("identity: {id_idx}"));
    for row in &table {
        text.push(row.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
    }
    Ok(Report {
        name: "classtable",
        json: json!({
            "extension": ext,
            "classes": forms.iter().map(form_json).collect::<Vec<_>>(),
            "identity": id_idx,
            "table": table,
        }),
        text,
        code: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("qfc").chain(args.iter().copied()))
    }

    #[test]
    fn identity_over_minus_23() {
        let o = go(&["identity", "--d", "-23", "--format", "text"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout, "x^2 + xy + 6y^2\n");
    }

    #[test]
    fn classtable_minus_4() {
        let o = go(&["classtable", "--d", "-4"]);
        assert_eq!(o.code, 0);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["classes"].as_array().unwrap().len(), 1);
        assert_eq!(v["classes"][0]["text"], "1,0,1");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["identity", "--d", "-12"]).code, 2);
        assert_eq!(go(&["identity", "--d", "banana"]).code, 1);
        assert_eq!(go(&["identity"]).code, 1);
        assert_eq!(go(&["identity", "--base", "qsqrt3", "--d", "-3"]).code, 1);
        assert_eq!(go(&["--help"]).code, 0);
    }
}
