//! Reader and writer for the OpenQASM 2.0 subset used by the compiler.
//!
//! Supported statements: the `OPENQASM 2.0;` header, `include`, a single
//! `qreg`, and the gates `cx h t tdg s sdg x z swap` with indexed operands.
//! `creg`, `measure` and `barrier` are skipped with a recorded warning.

use std::fmt::Write as _;

use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Gate, GateKind};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("unsupported gate `{name}` at line {line}")]
    UnsupportedGate { name: String, line: usize },
    #[error("operand q[{index}] out of range for qreg of size {size} at line {line}")]
    OperandOutOfRange {
        index: usize,
        size: usize,
        line: usize,
    },
    #[error("multiple qreg declarations (line {line}); a single quantum register is supported")]
    MultipleQreg { line: usize },
    #[error("gate statement before any qreg declaration at line {line}")]
    MissingQreg { line: usize },
    #[error("`{gate}` takes {expected} operand(s), got {got} at line {line}")]
    Arity {
        gate: String,
        expected: usize,
        got: usize,
        line: usize,
    },
    #[error("operands must be distinct at line {line}")]
    DuplicateOperand { line: usize },
}

/// A skipped statement, kept so callers can surface what was dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub message: String,
}

#[derive(Debug)]
pub struct ParseOutput {
    pub circuit: Circuit,
    pub warnings: Vec<ParseWarning>,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Int(usize),
    Real(String),
    Str(String),
    Sym(char),
    Arrow,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Token,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let bump = |c: char, line: &mut usize, col: &mut usize| {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        match c {
            c if c.is_whitespace() => {
                chars.next();
                bump(c, &mut line, &mut col);
            }
            '/' => {
                chars.next();
                bump('/', &mut line, &mut col);
                if chars.peek() == Some(&'/') {
                    // line comment
                    for c in chars.by_ref() {
                        bump(c, &mut line, &mut col);
                        if c == '\n' {
                            break;
                        }
                    }
                } else {
                    return Err(ParseError::Syntax {
                        line: tl,
                        col: tc,
                        message: "unexpected `/`".into(),
                    });
                }
            }
            '"' => {
                chars.next();
                bump('"', &mut line, &mut col);
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => {
                            bump('"', &mut line, &mut col);
                            break;
                        }
                        Some(c) => {
                            bump(c, &mut line, &mut col);
                            s.push(c);
                        }
                        None => {
                            return Err(ParseError::Syntax {
                                line: tl,
                                col: tc,
                                message: "unterminated string".into(),
                            })
                        }
                    }
                }
                out.push(Spanned {
                    tok: Token::Str(s),
                    line: tl,
                    col: tc,
                });
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                let mut is_real = false;
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() || c == '.' {
                        is_real |= c == '.';
                        s.push(c);
                        chars.next();
                        bump(c, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                let tok = if is_real {
                    Token::Real(s)
                } else {
                    match s.parse::<usize>() {
                        Ok(v) => Token::Int(v),
                        Err(_) => {
                            return Err(ParseError::Syntax {
                                line: tl,
                                col: tc,
                                message: format!("integer `{s}` out of range"),
                            })
                        }
                    }
                };
                out.push(Spanned {
                    tok,
                    line: tl,
                    col: tc,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                        bump(c, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Token::Ident(s),
                    line: tl,
                    col: tc,
                });
            }
            '-' => {
                chars.next();
                bump('-', &mut line, &mut col);
                if chars.peek() == Some(&'>') {
                    chars.next();
                    bump('>', &mut line, &mut col);
                    out.push(Spanned {
                        tok: Token::Arrow,
                        line: tl,
                        col: tc,
                    });
                } else {
                    return Err(ParseError::Syntax {
                        line: tl,
                        col: tc,
                        message: "expected `->`".into(),
                    });
                }
            }
            ';' | ',' | '[' | ']' | '(' | ')' => {
                chars.next();
                bump(c, &mut line, &mut col);
                out.push(Spanned {
                    tok: Token::Sym(c),
                    line: tl,
                    col: tc,
                });
            }
            other => {
                return Err(ParseError::Syntax {
                    line: tl,
                    col: tc,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    reg: Option<(String, usize)>,
    reg_line: usize,
    gates: Vec<Gate>,
    warnings: Vec<ParseWarning>,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        self.peek()
            .map(|t| (t.line, t.col))
            .or_else(|| self.toks.last().map(|t| (t.line, t.col)))
            .unwrap_or((1, 1))
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError::Syntax {
            line,
            col,
            message: message.into(),
        }
    }

    fn expect_sym(&mut self, sym: char) -> Result<(), ParseError> {
        match self.next() {
            Some(Spanned {
                tok: Token::Sym(c), ..
            }) if c == sym => Ok(()),
            Some(t) => Err(ParseError::Syntax {
                line: t.line,
                col: t.col,
                message: format!("expected `{sym}`"),
            }),
            None => Err(self.syntax(format!("expected `{sym}`, found end of input"))),
        }
    }

    fn expect_ident(&mut self) -> Result<(String, usize), ParseError> {
        match self.next() {
            Some(Spanned {
                tok: Token::Ident(s),
                line,
                ..
            }) => Ok((s, line)),
            Some(t) => Err(ParseError::Syntax {
                line: t.line,
                col: t.col,
                message: "expected identifier".into(),
            }),
            None => Err(self.syntax("expected identifier, found end of input")),
        }
    }

    fn expect_int(&mut self) -> Result<usize, ParseError> {
        match self.next() {
            Some(Spanned {
                tok: Token::Int(v), ..
            }) => Ok(v),
            Some(t) => Err(ParseError::Syntax {
                line: t.line,
                col: t.col,
                message: "expected integer".into(),
            }),
            None => Err(self.syntax("expected integer, found end of input")),
        }
    }

    /// Consume tokens up to and including the next `;`.
    fn skip_statement(&mut self) {
        while let Some(t) = self.next() {
            if t.tok == Token::Sym(';') {
                break;
            }
        }
    }

    /// `name[index]`, checked against the declared register.
    fn operand(&mut self) -> Result<usize, ParseError> {
        let (name, line) = self.expect_ident()?;
        let (reg_name, reg_size) = self
            .reg
            .clone()
            .ok_or(ParseError::MissingQreg { line })?;
        if name != reg_name {
            return Err(ParseError::Syntax {
                line,
                col: 1,
                message: format!("unknown register `{name}` (declared: `{reg_name}`)"),
            });
        }
        self.expect_sym('[')?;
        let index = self.expect_int()?;
        self.expect_sym(']')?;
        if index >= reg_size {
            return Err(ParseError::OperandOutOfRange {
                index,
                size: reg_size,
                line,
            });
        }
        Ok(index)
    }

    fn gate_statement(&mut self, name: String, line: usize) -> Result<(), ParseError> {
        let kind = GateKind::from_qasm_name(&name)
            .ok_or_else(|| ParseError::UnsupportedGate {
                name: name.clone(),
                line,
            })?;
        let mut operands = vec![self.operand()?];
        while let Some(t) = self.peek() {
            if t.tok == Token::Sym(',') {
                self.next();
                operands.push(self.operand()?);
            } else {
                break;
            }
        }
        self.expect_sym(';')?;
        match Gate::new(kind, operands) {
            Ok(g) => {
                self.gates.push(g);
                Ok(())
            }
            Err(CircuitError::Arity { expected, got, .. }) => Err(ParseError::Arity {
                gate: name,
                expected,
                got,
                line,
            }),
            Err(CircuitError::DuplicateOperand(_)) => {
                Err(ParseError::DuplicateOperand { line })
            }
            Err(CircuitError::OperandOutOfRange { .. }) => unreachable!("checked per operand"),
        }
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        let (name, line) = self.expect_ident()?;
        match name.as_str() {
            "OPENQASM" => {
                // version number, ignored
                match self.next() {
                    Some(Spanned {
                        tok: Token::Real(_) | Token::Int(_),
                        ..
                    }) => {}
                    _ => return Err(self.syntax("expected version after OPENQASM")),
                }
                self.expect_sym(';')
            }
            "include" => {
                match self.next() {
                    Some(Spanned {
                        tok: Token::Str(_), ..
                    }) => {}
                    _ => return Err(self.syntax("expected string after include")),
                }
                self.expect_sym(';')
            }
            "qreg" => {
                if self.reg.is_some() {
                    return Err(ParseError::MultipleQreg { line });
                }
                let (reg_name, _) = self.expect_ident()?;
                self.expect_sym('[')?;
                let size = self.expect_int()?;
                self.expect_sym(']')?;
                self.expect_sym(';')?;
                self.reg = Some((reg_name, size));
                self.reg_line = line;
                Ok(())
            }
            "creg" | "measure" | "barrier" => {
                self.skip_statement();
                self.warnings.push(ParseWarning {
                    line,
                    message: format!("`{name}` statement skipped"),
                });
                Ok(())
            }
            _ => self.gate_statement(name, line),
        }
    }
}

/// Parse a source text into a [`Circuit`], collecting warnings for skipped
/// statements. The single `qreg` declaration defines the qubit count.
pub fn parse_qasm(text: &str) -> Result<ParseOutput, ParseError> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        reg: None,
        reg_line: 0,
        gates: Vec::new(),
        warnings: Vec::new(),
    };
    while parser.peek().is_some() {
        parser.statement()?;
    }
    let num_qubits = parser.reg.as_ref().map(|(_, n)| *n).unwrap_or(0);
    let circuit = Circuit::new(num_qubits, parser.gates)
        .expect("operands validated against register size");
    Ok(ParseOutput {
        circuit,
        warnings: parser.warnings,
    })
}

/// Emit the circuit in the same subset, one statement per line, with the
/// standard header and a single `qreg q[N];`.
pub fn serialize_qasm(circuit: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", circuit.num_qubits());
    for gate in circuit.gates() {
        let args = gate
            .qubits()
            .iter()
            .map(|&q| format!("q[{q}]"))
            .collect::<Vec<_>>()
            .join(",");
        let _ = writeln!(out, "{} {};", gate.kind.qasm_name(), args);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_program() {
        let out = parse_qasm("qreg q[2]; cx q[0],q[1];").unwrap();
        assert_eq!(out.circuit.num_qubits(), 2);
        assert_eq!(out.circuit.gates(), &[Gate::cnot(0, 1)]);
        assert!(out.warnings.is_empty());
    }

    #[test]
    fn gates_keep_source_order() {
        let out = parse_qasm("qreg q[3]; h q[0]; cx q[0],q[2]; t q[2];").unwrap();
        assert_eq!(out.circuit.num_qubits(), 3);
        assert_eq!(
            out.circuit.gates(),
            &[
                Gate::h(0),
                Gate::cnot(0, 2),
                Gate::single(GateKind::T, 2)
            ]
        );
    }

    #[test]
    fn cnot_arity_is_rejected() {
        let err = parse_qasm("qreg q[2]; cx q[0];").unwrap_err();
        assert!(matches!(err, ParseError::Arity { expected: 2, got: 1, .. }));
    }

    #[test]
    fn header_and_skipped_statements() {
        let src = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncreg c[2];\n\
                   h q[0];\nmeasure q[0] -> c[0];\nbarrier q;\n";
        let out = parse_qasm(src).unwrap();
        assert_eq!(out.circuit.gates(), &[Gate::h(0)]);
        assert_eq!(out.warnings.len(), 3);
        assert_eq!(out.warnings[0].line, 4);
    }

    #[test]
    fn unsupported_gate_is_an_error() {
        let err = parse_qasm("qreg q[2]; rx q[0];").unwrap_err();
        assert_eq!(
            err,
            ParseError::UnsupportedGate {
                name: "rx".into(),
                line: 1
            }
        );
    }

    #[test]
    fn operand_out_of_range() {
        let err = parse_qasm("qreg q[2];\nx q[2];").unwrap_err();
        assert_eq!(
            err,
            ParseError::OperandOutOfRange {
                index: 2,
                size: 2,
                line: 2
            }
        );
    }

    #[test]
    fn multiple_qreg_rejected() {
        let err = parse_qasm("qreg q[2]; qreg r[2];").unwrap_err();
        assert_eq!(err, ParseError::MultipleQreg { line: 1 });
    }

    #[test]
    fn syntax_error_carries_position() {
        let err = parse_qasm("qreg q[2];\ncx q[0] q[1];").unwrap_err();
        match err {
            ParseError::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn comments_are_skipped() {
        let out = parse_qasm("// header\nqreg q[1]; // reg\nh q[0];").unwrap();
        assert_eq!(out.circuit.len(), 1);
    }

    #[test]
    fn round_trip_is_identity() {
        let src = "qreg q[4]; h q[0]; cx q[0],q[3]; swap q[1],q[2]; tdg q[3]; sdg q[0];";
        let first = parse_qasm(src).unwrap().circuit;
        let text = serialize_qasm(&first);
        let second = parse_qasm(&text).unwrap().circuit;
        assert_eq!(first, second);
    }
}
