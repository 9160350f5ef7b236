//! Amplitude and tableau files.
//!
//! Text amplitude files start with a header line, either `L d` for a uniform
//! chain or `dims d_0 d_1 …`, followed by one amplitude per line as `re` or
//! `re im`. Site 0 is the most significant index. `#` starts a comment.
//!
//! Binary amplitude files hold the magic bytes `ILAMP001`, the site count and
//! each site dimension as little-endian `u64`, then `re, im` pairs as
//! little-endian `f64`.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::stabilizer::StabilizerTableau;
use crate::state::PureState;
use crate::C64;

const MAGIC: &[u8; 8] = b"ILAMP001";

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse()
        .map_err(|_| perr(line, format!("bad number {tok:?}")))
}

pub fn parse_amplitudes_text(text: &str) -> Result<PureState> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| perr(1, "missing header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let dims: Vec<usize> = match toks.as_slice() {
        ["dims", rest @ ..] if !rest.is_empty() => rest
            .iter()
            .map(|t| parse_num(t, hline))
            .collect::<Result<_>>()?,
        [l, d] => vec![parse_num(d, hline)?; parse_num::<usize>(l, hline)?],
        _ => return Err(perr(hline, "header must be `L d` or `dims d_0 d_1 …`")),
    };
    let mut amps = Vec::new();
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let a = match toks.as_slice() {
            [re] => C64::new(parse_num(re, line)?, 0.0),
            [re, im] => C64::new(parse_num(re, line)?, parse_num(im, line)?),
            _ => return Err(perr(line, "expected `re` or `re im`")),
        };
        amps.push(a);
    }
    PureState::new(dims, amps)
}

pub fn format_amplitudes_text(state: &PureState) -> String {
    let dims = state.dims();
    let mut out = if dims.iter().all(|&d| d == dims[0]) {
        format!("{} {}\n", dims.len(), dims[0])
    } else {
        let ds: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
        format!("dims {}\n", ds.join(" "))
    };
    for a in state.amplitudes() {
        out.push_str(&format!("{:e} {:e}\n", a.re, a.im));
    }
    out
}

pub fn parse_amplitudes_binary(bytes: &[u8]) -> Result<PureState> {
    let bad = |m: &str| Error::Config(format!("binary amplitude file: {m}"));
    if bytes.len() < 16 || &bytes[..8] != MAGIC {
        return Err(bad("missing header"));
    }
    let word = |at: usize| -> Result<[u8; 8]> {
        bytes
            .get(at..at + 8)
            .and_then(|s| s.try_into().ok())
            .ok_or_else(|| bad("truncated"))
    };
    let len = u64::from_le_bytes(word(8)?) as usize;
    let dims = (0..len)
        .map(|k| word(16 + 8 * k).map(|w| u64::from_le_bytes(w) as usize))
        .collect::<Result<Vec<_>>>()?;
    let body = 16 + 8 * len;
    let n = (bytes.len() - body.min(bytes.len())) / 16;
    if body + 16 * n != bytes.len() {
        return Err(bad("trailing bytes"));
    }
    let amps = (0..n)
        .map(|k| {
            let at = body + 16 * k;
            Ok(C64::new(
                f64::from_le_bytes(word(at)?),
                f64::from_le_bytes(word(at + 8)?),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    PureState::new(dims, amps)
}

pub fn format_amplitudes_binary(state: &PureState) -> Vec<u8> {
    let mut out = MAGIC.to_vec();
    out.extend((state.len() as u64).to_le_bytes());
    for &d in state.dims() {
        out.extend((d as u64).to_le_bytes());
    }
    for a in state.amplitudes() {
        out.extend(a.re.to_le_bytes());
        out.extend(a.im.to_le_bytes());
    }
    out
}

/// Read either amplitude format, detected by the magic bytes.
pub fn read_amplitudes(path: &Path) -> Result<PureState> {
    let bytes = fs::read(path)?;
    if bytes.starts_with(MAGIC) {
        parse_amplitudes_binary(&bytes)
    } else {
        let text = String::from_utf8(bytes)
            .map_err(|_| Error::Config("amplitude file is not UTF-8".into()))?;
        parse_amplitudes_text(&text)
    }
}

/// Write binary when the extension is `bin`, text otherwise.
pub fn write_amplitudes(path: &Path, state: &PureState) -> Result<()> {
    if path.extension().is_some_and(|e| e == "bin") {
        fs::write(path, format_amplitudes_binary(state))?;
    } else {
        fs::write(path, format_amplitudes_text(state))?;
    }
    Ok(())
}

/// One signed Pauli string per line.
pub fn read_tableau(path: &Path) -> Result<StabilizerTableau> {
    fs::read_to_string(path)?.parse()
}

pub fn write_tableau(path: &Path, t: &StabilizerTableau) -> Result<()> {
    fs::write(path, t.to_string())?;
    Ok(())
}
