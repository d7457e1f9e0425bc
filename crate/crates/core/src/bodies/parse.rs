//! Line-oriented body DSL.
//!
//! ```text
//! block [1,7] lq q=4 w=[1,5] scale=sqrt(2) p=2
//! block [2,3] quad Q=[[1,0.5],[0.5,3]] p=3/2
//! block [4] max w=[2] p=1
//! ```
//!
//! Indices are 1-based. Lines may also be separated by `;`, and `#` starts a
//! comment. Reals accept `a`, `a/b`, `sqrt(a)` and `√a`.

use super::{Block, BlockGauge, BodySpec};
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl AsRef<str>) -> Error {
        Error::Format(format!("line {}: {} (near {:?})", self.line, msg.as_ref(), self.rest()))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(format!("expected {token:?}")))
        }
    }

    fn word(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err("expected a word"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-')))
            .unwrap_or(rest.len());
        // Do not swallow a sign that belongs to the next token.
        let tok = &rest[..len];
        let v: f64 = tok.parse().map_err(|_| self.err(format!("bad number {tok:?}")))?;
        self.pos += len;
        Ok(v)
    }

    fn real(&mut self) -> Result<f64> {
        let neg = self.eat("-");
        let mut v = if self.eat("sqrt(") {
            let inner = self.real()?;
            self.expect(")")?;
            inner.sqrt()
        } else if self.eat("√") {
            self.atom()?.sqrt()
        } else {
            self.number()?
        };
        if self.rest().starts_with('/') {
            self.pos += 1;
            let den = self.atom()?;
            if den == 0.0 {
                return Err(self.err("division by zero"));
            }
            v /= den;
        }
        if !v.is_finite() {
            return Err(self.err("non-finite value"));
        }
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<f64> {
        if self.eat("sqrt(") {
            let inner = self.real()?;
            self.expect(")")?;
            Ok(inner.sqrt())
        } else {
            self.number()
        }
    }

    fn real_list(&mut self) -> Result<Vec<f64>> {
        self.expect("[")?;
        let mut out = vec![self.real()?];
        while self.eat(",") {
            out.push(self.real()?);
        }
        self.expect("]")?;
        Ok(out)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<f64>>> {
        self.expect("[")?;
        let mut rows = vec![self.real_list()?];
        while self.eat(",") {
            rows.push(self.real_list()?);
        }
        self.expect("]")?;
        Ok(rows)
    }

    fn index_list(&mut self) -> Result<Vec<usize>> {
        self.expect("[")?;
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let rest = self.rest();
            let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            let idx: usize = rest[..len].parse().map_err(|_| self.err("expected a 1-based index"))?;
            if idx == 0 {
                return Err(self.err("indices are 1-based"));
            }
            self.pos += len;
            out.push(idx - 1);
            if !self.eat(",") {
                break;
            }
        }
        self.expect("]")?;
        Ok(out)
    }
}

#[derive(Default)]
struct Params {
    q: Option<f64>,
    w: Option<Vec<f64>>,
    scale: Option<f64>,
    matrix: Option<Vec<Vec<f64>>>,
    p: Option<f64>,
}

fn parse_line(cur: &mut Cursor<'_>) -> Result<Block> {
    let kw = cur.word()?;
    if kw != "block" {
        return Err(cur.err(format!("expected \"block\", found {kw:?}")));
    }
    let coords = cur.index_list()?;
    let kind = cur.word()?;
    let mut params = Params::default();
    while !cur.at_end() {
        let key = cur.word()?;
        cur.expect("=")?;
        let dup = match key {
            "q" => params.q.replace(cur.real()?).is_some(),
            "w" => params.w.replace(cur.real_list()?).is_some(),
            "scale" => params.scale.replace(cur.real()?).is_some(),
            "Q" => params.matrix.replace(cur.matrix()?).is_some(),
            "p" => params.p.replace(cur.real()?).is_some(),
            other => return Err(cur.err(format!("unknown parameter {other:?}"))),
        };
        if dup {
            return Err(cur.err(format!("parameter {key:?} given twice")));
        }
    }
    let missing = |what: &str| cur.err(format!("{kind} block needs {what}"));
    let gauge = match kind {
        "lq" => {
            if params.matrix.is_some() {
                return Err(cur.err("Q is only valid for quad blocks"));
            }
            BlockGauge::lq(
                params.q.ok_or_else(|| missing("q="))?,
                params.w.ok_or_else(|| missing("w=[...]"))?,
                params.scale.unwrap_or(1.0),
            )?
        }
        "max" => {
            if params.q.is_some() || params.scale.is_some() || params.matrix.is_some() {
                return Err(cur.err("max blocks take only w=[...]"));
            }
            BlockGauge::max(params.w.ok_or_else(|| missing("w=[...]"))?)?
        }
        "quad" => {
            if params.q.is_some() || params.scale.is_some() || params.w.is_some() {
                return Err(cur.err("quad blocks take only Q=[[...]]"));
            }
            BlockGauge::quad(&params.matrix.ok_or_else(|| missing("Q=[[...]]"))?)?
        }
        other => return Err(cur.err(format!("unknown gauge kind {other:?}"))),
    };
    let exponent = params.p.ok_or_else(|| missing("p="))?;
    Ok(Block {
        coords,
        gauge,
        exponent,
    })
}

/// Parses and validates a body document. The dimension is the largest index used.
pub fn parse_body_spec(text: &str) -> Result<BodySpec> {
    let mut blocks = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        for stmt in body.split(';') {
            if stmt.trim().is_empty() {
                continue;
            }
            let mut cur = Cursor {
                src: stmt,
                pos: 0,
                line: lineno + 1,
            };
            blocks.push(parse_line(&mut cur)?);
        }
    }
    if blocks.is_empty() {
        return Err(Error::Format("body has no blocks".into()));
    }
    let n = blocks.iter().flat_map(|b| b.coords.iter()).max().map_or(0, |m| m + 1);
    BodySpec::new(n, blocks)
}
