//! Recursive-descent parser for module-spec expressions such as
//! `(tensor (vfam 1) (trunc>= 5 (cycle 2 1)))`.

use crate::characters::IrrDecomposition;
use crate::error::{Error, Result};
use crate::fbmodules::{FbModuleSpec, VConvention};
use crate::partitions::{parse_partition_at, Partition};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token<'a> {
    Open,
    Close,
    Str(&'a str),
    Atom(&'a str),
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Next token and its byte offset; `None` at end of input.
    fn next(&mut self) -> Result<Option<(Token<'a>, usize)>> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let Some(c) = rest.chars().next() else {
            return Ok(None);
        };
        let tok = match c {
            '(' => {
                self.pos += 1;
                Token::Open
            }
            ')' => {
                self.pos += 1;
                Token::Close
            }
            '"' => {
                let end = rest[1..]
                    .find('"')
                    .ok_or_else(|| Error::parse(start, "unterminated string"))?;
                self.pos += end + 2;
                Token::Str(&rest[1..end + 1])
            }
            _ => {
                let len = rest
                    .find(|c: char| c.is_whitespace() || c == '(' || c == ')' || c == '"')
                    .unwrap_or(rest.len());
                self.pos += len;
                Token::Atom(&rest[..len])
            }
        };
        Ok(Some((tok, start)))
    }

    fn peek(&mut self) -> Result<Option<(Token<'a>, usize)>> {
        let save = self.pos;
        let tok = self.next();
        self.pos = save;
        tok
    }

    fn expect_close(&mut self) -> Result<()> {
        match self.next()? {
            Some((Token::Close, _)) => Ok(()),
            Some((_, pos)) => Err(Error::parse(pos, "expected `)`")),
            None => Err(Error::parse(self.text.len(), "expected `)`")),
        }
    }

    fn atom(&mut self, what: &str) -> Result<(&'a str, usize)> {
        match self.next()? {
            Some((Token::Atom(a), pos)) => Ok((a, pos)),
            Some((_, pos)) => Err(Error::parse(pos, format!("expected {what}"))),
            None => Err(Error::parse(self.text.len(), format!("expected {what}"))),
        }
    }

    fn integer(&mut self) -> Result<usize> {
        let (a, pos) = self.atom("an integer")?;
        a.parse()
            .map_err(|_| Error::parse(pos, format!("expected an integer, found `{a}`")))
    }
}

/// Parses a module-spec expression.
pub fn parse_spec(text: &str) -> Result<FbModuleSpec> {
    let mut lx = Lexer { text, pos: 0 };
    let spec = expr(&mut lx)?;
    match lx.next()? {
        None => Ok(spec),
        Some((_, pos)) => Err(Error::parse(pos, "trailing input")),
    }
}

fn expr(lx: &mut Lexer<'_>) -> Result<FbModuleSpec> {
    match lx.next()? {
        Some((Token::Open, _)) => {}
        Some((_, pos)) => return Err(Error::parse(pos, "expected `(`")),
        None => return Err(Error::parse(lx.text.len(), "empty expression")),
    }
    let (head, head_pos) = lx.atom("a node name")?;
    let spec = match head {
        "proj" => {
            let n = lx.integer()?;
            let (body, pos) = match lx.next()? {
                Some((Token::Str(s), pos)) => (s, pos + 1),
                Some((_, pos)) => return Err(Error::parse(pos, "expected a quoted factor list")),
                None => return Err(Error::parse(lx.text.len(), "expected a quoted factor list")),
            };
            FbModuleSpec::Projective(factor_list(body, n, pos)?)
        }
        "vfam" | "vfam-cf" => {
            let (a, pos) = lx.atom("a partition")?;
            FbModuleSpec::VFamily {
                lambda: parse_partition_at(a, pos)?,
                convention: if head == "vfam" {
                    VConvention::Socle
                } else {
                    VConvention::ChurchFarb
                },
            }
        }
        "cycle" => {
            let mut parts = Vec::new();
            while let Some((Token::Atom(_), pos)) = lx.peek()? {
                let k = lx.integer()?;
                if k == 0 {
                    return Err(Error::parse(pos, "cycle lengths must be positive"));
                }
                parts.push(k);
            }
            if parts.is_empty() {
                return Err(Error::parse(head_pos, "cycle needs at least one length"));
            }
            FbModuleSpec::CycleModule(Partition::from_unsorted(parts))
        }
        "tensor" => {
            let a = expr(lx)?;
            let b = expr(lx)?;
            FbModuleSpec::tensor(a, b)
        }
        "sum" => {
            let mut items = Vec::new();
            while let Some((Token::Open, _)) = lx.peek()? {
                items.push(expr(lx)?);
            }
            FbModuleSpec::DirectSum(items)
        }
        "trunc>=" => {
            let from = lx.integer()?;
            FbModuleSpec::truncate(expr(lx)?, from)
        }
        "wle" | "wgt" => {
            let p = lx.integer()?;
            let child = Box::new(expr(lx)?);
            if head == "wle" {
                FbModuleSpec::WeightAtMost { child, p }
            } else {
                FbModuleSpec::WeightAbove { child, p }
            }
        }
        other => return Err(Error::parse(head_pos, format!("unknown node `{other}`"))),
    };
    lx.expect_close()?;
    Ok(spec)
}

/// `"[k*]λ; [k*]μ; …"`, every partition of size `n`.
fn factor_list(body: &str, n: usize, offset: usize) -> Result<IrrDecomposition> {
    let mut d = IrrDecomposition::zero(n);
    if body.trim().is_empty() {
        return Ok(d);
    }
    let mut start = 0;
    for item in body.split(';') {
        let pos = offset + start;
        start += item.len() + 1;
        let (mult, part, part_pos) = match item.split_once('*') {
            Some((k, rest)) => {
                let k: u64 = k
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(pos, format!("bad multiplicity `{}`", k.trim())))?;
                (k, rest, pos + item.len() - rest.len())
            }
            None => (1, item, pos),
        };
        let lambda = parse_partition_at(part, part_pos)?;
        if lambda.size() != n {
            return Err(Error::parse(
                part_pos + part.len() - part.trim_start().len(),
                format!(
                    "partition {lambda} has size {}, expected {n}",
                    lambda.size()
                ),
            ));
        }
        d.add_factor(lambda, mult)?;
    }
    Ok(d)
}
