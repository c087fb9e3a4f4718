//! The circuit text format.
//!
//! ```text
//! # comment to end of line; blank lines are ignored
//! qubits <N>
//! x|y|z|h|s|sdg|t|tdg <q>
//! p <theta-radians> <q>
//! rk <k> <q>
//! cx <c> <t>
//! cp <k> <c> <t>          # controlled rk
//! mcx <c1> .. <cm> <t>
//! mcz <c1> .. <cm> <t>
//! measure <q>
//! measure_all
//! ```

use std::fmt::{self, Write};

use thiserror::Error;

use super::{Circuit, CircuitOp};
use crate::gates::{GateError, GateKind, GateSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("expected header `qubits <N>` before any operation")]
    MissingHeader,
    #[error("duplicate `qubits` header")]
    DuplicateHeader,
    #[error("qubit count must be at least 1")]
    NoQubits,
    #[error("unknown mnemonic `{0}`")]
    UnknownMnemonic(String),
    #[error("`{mnemonic}` takes {expected} argument(s), found {found}")]
    Arity {
        mnemonic: String,
        expected: &'static str,
        found: usize,
    },
    #[error("invalid number `{0}`")]
    InvalidNumber(String),
    #[error("qubit {qubit} out of range for {qubits} qubits")]
    QubitOutOfRange { qubit: usize, qubits: usize },
    #[error(transparent)]
    Gate(GateError),
}

/// A parse failure with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.kind)
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let code = line.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut start = None;
    for (col, (i, ch)) in code.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((i, col + 1)),
            (true, Some((s, c))) => {
                tokens.push(Token { text: &code[s..i], column: c });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((s, c)) = start {
        tokens.push(Token { text: &code[s..], column: c });
    }
    tokens
}

/// Parses circuit text; `name` becomes the circuit's name.
pub fn parse(name: &str, text: &str) -> Result<Circuit, ParseError> {
    let mut circuit: Option<Circuit> = None;
    let mut last_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let tokens = tokenize(raw);
        let Some(head) = tokens.first() else { continue };
        let err = |column: usize, kind: ParseErrorKind| ParseError { line, column, kind };
        let args = &tokens[1..];

        if head.text == "qubits" {
            if circuit.is_some() {
                return Err(err(head.column, ParseErrorKind::DuplicateHeader));
            }
            if args.len() != 1 {
                return Err(err(head.column, arity("qubits", "1", args.len())));
            }
            let n = number::<usize>(&args[0]).map_err(|k| err(args[0].column, k))?;
            let c = Circuit::new(name, n).map_err(|_| err(args[0].column, ParseErrorKind::NoQubits))?;
            circuit = Some(c);
            continue;
        }

        let Some(c) = circuit.as_mut() else {
            return Err(err(head.column, ParseErrorKind::MissingHeader));
        };
        let n = c.qubits();
        let qubit = |t: &Token| -> Result<usize, ParseError> {
            let q = number::<usize>(t).map_err(|k| err(t.column, k))?;
            if q >= n {
                return Err(err(t.column, ParseErrorKind::QubitOutOfRange { qubit: q, qubits: n }));
            }
            Ok(q)
        };
        let expect = |count: usize, expected: &'static str| {
            if args.len() != count {
                Err(err(head.column, arity(head.text, expected, args.len())))
            } else {
                Ok(())
            }
        };
        let gate = |kind: GateKind, target: usize, controls: Vec<usize>, column: usize| {
            GateSpec::new(kind, target, controls)
                .map(CircuitOp::Gate)
                .map_err(|e| err(column, ParseErrorKind::Gate(e)))
        };

        let op = match head.text {
            "x" | "y" | "z" | "h" | "s" | "sdg" | "t" | "tdg" => {
                expect(1, "1")?;
                let kind = match head.text {
                    "x" => GateKind::X,
                    "y" => GateKind::Y,
                    "z" => GateKind::Z,
                    "h" => GateKind::H,
                    "s" => GateKind::S,
                    "sdg" => GateKind::Sdg,
                    "t" => GateKind::T,
                    _ => GateKind::Tdg,
                };
                CircuitOp::Gate(GateSpec::single(kind, qubit(&args[0])?))
            }
            "p" => {
                expect(2, "2")?;
                let theta = number::<f64>(&args[0]).map_err(|k| err(args[0].column, k))?;
                if !theta.is_finite() {
                    return Err(err(args[0].column, ParseErrorKind::InvalidNumber(args[0].text.into())));
                }
                CircuitOp::Gate(GateSpec::single(GateKind::Phase(theta), qubit(&args[1])?))
            }
            "rk" => {
                expect(2, "2")?;
                let k = number::<u32>(&args[0]).map_err(|k| err(args[0].column, k))?;
                CircuitOp::Gate(GateSpec::single(GateKind::Rk(k), qubit(&args[1])?))
            }
            "cx" => {
                expect(2, "2")?;
                let (ctrl, target) = (qubit(&args[0])?, qubit(&args[1])?);
                gate(GateKind::X, target, vec![ctrl], args[1].column)?
            }
            "cp" => {
                expect(3, "3")?;
                let k = number::<u32>(&args[0]).map_err(|k| err(args[0].column, k))?;
                let (ctrl, target) = (qubit(&args[1])?, qubit(&args[2])?);
                gate(GateKind::Rk(k), target, vec![ctrl], args[2].column)?
            }
            "mcx" | "mcz" => {
                if args.len() < 2 {
                    return Err(err(head.column, arity(head.text, "at least 2", args.len())));
                }
                let qubits = args.iter().map(qubit).collect::<Result<Vec<_>, _>>()?;
                let (target, controls) = qubits.split_last().expect("at least two arguments");
                let kind = if head.text == "mcx" { GateKind::X } else { GateKind::Z };
                let last = args.last().expect("non-empty").column;
                gate(kind, *target, controls.to_vec(), last)?
            }
            "measure" => {
                expect(1, "1")?;
                CircuitOp::Measure(qubit(&args[0])?)
            }
            "measure_all" => {
                expect(0, "0")?;
                CircuitOp::MeasureAll
            }
            other => return Err(err(head.column, ParseErrorKind::UnknownMnemonic(other.to_string()))),
        };
        c.push(op).expect("operands validated above");
    }
    circuit.ok_or(ParseError {
        line: last_line,
        column: 1,
        kind: ParseErrorKind::MissingHeader,
    })
}

fn arity(mnemonic: &str, expected: &'static str, found: usize) -> ParseErrorKind {
    ParseErrorKind::Arity {
        mnemonic: mnemonic.to_string(),
        expected,
        found,
    }
}

fn number<T: std::str::FromStr>(t: &Token) -> Result<T, ParseErrorKind> {
    t.text
        .parse()
        .map_err(|_| ParseErrorKind::InvalidNumber(t.text.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SerializeError {
    #[error("op {index}: {kind} with {controls} control(s) has no mnemonic in the circuit format")]
    Unrepresentable {
        index: usize,
        kind: String,
        controls: usize,
    },
}

/// Writes a circuit in the text format. Fails for controlled gates the
/// format has no mnemonic for (e.g. controlled `h`).
pub fn serialize(circuit: &Circuit) -> Result<String, SerializeError> {
    let mut out = format!("qubits {}\n", circuit.qubits());
    for (index, op) in circuit.ops().iter().enumerate() {
        match op {
            CircuitOp::Measure(q) => writeln!(out, "measure {q}"),
            CircuitOp::MeasureAll => writeln!(out, "measure_all"),
            CircuitOp::Gate(spec) => {
                let t = spec.target();
                let ctrl = spec.controls();
                let list = ctrl.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
                match (spec.kind(), ctrl.len()) {
                    (GateKind::Phase(theta), 0) => writeln!(out, "p {theta} {t}"),
                    (GateKind::Rk(k), 0) => writeln!(out, "rk {k} {t}"),
                    (GateKind::Rk(k), 1) => writeln!(out, "cp {k} {list} {t}"),
                    (GateKind::X, 1) => writeln!(out, "cx {list} {t}"),
                    (GateKind::X, _) if !ctrl.is_empty() => writeln!(out, "mcx {list} {t}"),
                    (GateKind::Z, _) if !ctrl.is_empty() => writeln!(out, "mcz {list} {t}"),
                    (kind, 0) => writeln!(out, "{kind} {t}"),
                    (kind, controls) => {
                        return Err(SerializeError::Unrepresentable {
                            index,
                            kind: kind.to_string(),
                            controls,
                        })
                    }
                }
            }
        }
        .expect("writing to a String");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bell_circuit() {
        let c = parse("bell", "qubits 2\nh 0\ncx 0 1\nmeasure 0\n").unwrap();
        assert_eq!(c.qubits(), 2);
        assert_eq!(c.name(), "bell");
        assert_eq!(
            c.ops(),
            &[
                CircuitOp::Gate(GateSpec::single(GateKind::H, 0)),
                CircuitOp::Gate(GateSpec::new(GateKind::X, 1, [0]).unwrap()),
                CircuitOp::Measure(0),
            ]
        );
    }

    #[test]
    fn empty_circuit_with_comments() {
        let c = parse("e", "# nothing here\n\nqubits 1   # one qubit\n").unwrap();
        assert_eq!(c.qubits(), 1);
        assert!(c.ops().is_empty());
    }

    #[test]
    fn out_of_range_qubit() {
        let e = parse("bad", "qubits 2\ncx 0 5\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 6));
        assert_eq!(e.kind, ParseErrorKind::QubitOutOfRange { qubit: 5, qubits: 2 });
        assert_eq!(e.to_string(), "line 2, column 6: qubit 5 out of range for 2 qubits");
    }

    #[test]
    fn error_kinds() {
        let kind = |text: &str| parse("c", text).unwrap_err().kind;
        assert_eq!(kind("h 0\n"), ParseErrorKind::MissingHeader);
        assert_eq!(kind(""), ParseErrorKind::MissingHeader);
        assert_eq!(kind("qubits 1\nqubits 1\n"), ParseErrorKind::DuplicateHeader);
        assert_eq!(kind("qubits 0\n"), ParseErrorKind::NoQubits);
        assert_eq!(kind("qubits 2\nfoo 1\n"), ParseErrorKind::UnknownMnemonic("foo".into()));
        assert!(matches!(kind("qubits 2\nh 0 1\n"), ParseErrorKind::Arity { found: 2, .. }));
        assert!(matches!(kind("qubits 2\nmcz 1\n"), ParseErrorKind::Arity { found: 1, .. }));
        assert_eq!(kind("qubits 2\np abc 0\n"), ParseErrorKind::InvalidNumber("abc".into()));
        assert_eq!(kind("qubits 2\np inf 0\n"), ParseErrorKind::InvalidNumber("inf".into()));
        assert_eq!(kind("qubits 2\ncx 1 1\n"), ParseErrorKind::Gate(GateError::TargetIsControl(1)));
    }

    #[test]
    fn all_mnemonics() {
        let text = "qubits 4\nx 0\ny 1\nz 2\nh 3\ns 0\nsdg 1\nt 2\ntdg 3\np 0.25 1\nrk 3 2\n\
                    cx 0 1\ncp 2 3 0\nmcx 0 1 2 3\nmcz 3 1 0\nmeasure 2\nmeasure_all\n";
        let c = parse("all", text).unwrap();
        assert_eq!(c.ops().len(), 16);
        assert_eq!(
            c.ops()[13],
            CircuitOp::Gate(GateSpec::new(GateKind::Z, 0, [1, 3]).unwrap())
        );
        assert_eq!(serialize(&c).unwrap(), text.replace("mcz 3 1 0", "mcz 1 3 0"));
    }

    #[test]
    fn controlled_hadamard_has_no_mnemonic() {
        let mut c = Circuit::new("c", 2).unwrap();
        c.gate(GateSpec::new(GateKind::H, 1, [0]).unwrap()).unwrap();
        assert!(matches!(
            serialize(&c),
            Err(SerializeError::Unrepresentable { index: 0, controls: 1, .. })
        ));
    }

    fn representable_op(n: usize) -> impl Strategy<Value = CircuitOp> {
        let q = 0..n;
        prop_oneof![
            (0..8usize, q.clone()).prop_map(|(k, t)| {
                use GateKind::*;
                let kind = [X, Y, Z, H, S, Sdg, T, Tdg][k];
                CircuitOp::Gate(GateSpec::single(kind, t))
            }),
            (-10.0f64..10.0, q.clone()).prop_map(|(th, t)| CircuitOp::Gate(GateSpec::single(GateKind::Phase(th), t))),
            (0u32..40, q.clone(), proptest::option::of(q.clone())).prop_map(|(k, t, c)| {
                let c = c.filter(|&c| c != t);
                CircuitOp::Gate(GateSpec::new(GateKind::Rk(k), t, c).unwrap())
            }),
            (proptest::bool::ANY, q.clone(), proptest::collection::vec(q.clone(), 1..4)).prop_map(|(is_x, t, cs)| {
                let kind = if is_x { GateKind::X } else { GateKind::Z };
                let cs: Vec<usize> = cs.into_iter().filter(|&c| c != t).collect();
                CircuitOp::Gate(GateSpec::new(kind, t, cs).unwrap())
            }),
            q.prop_map(CircuitOp::Measure),
            Just(CircuitOp::MeasureAll),
        ]
    }

    fn representable_circuit() -> impl Strategy<Value = Circuit> {
        (1usize..6).prop_flat_map(|n| {
            proptest::collection::vec(representable_op(n), 0..20).prop_map(move |ops| {
                let mut c = Circuit::new("rt", n).unwrap();
                for op in ops {
                    c.push(op).unwrap();
                }
                c
            })
        })
    }

    proptest! {
        #[test]
        fn parse_inverts_serialize(c in representable_circuit()) {
            let text = serialize(&c).unwrap();
            prop_assert_eq!(parse("rt", &text).unwrap(), c);
        }
    }
}
