//! Text formats for codes and partitions.
//!
//! A code file is a header line `q=<q> n=<n> count=<k>` followed by `k`
//! codewords in lexicographic order, one per line, LF-terminated. For
//! q <= 10 each word is `n` digit characters; for larger q the header gains
//! a `sep=,` token and each word is a comma-separated list of indices.
//!
//! A partition directory holds a `manifest` file with the single line
//! `q=<q> n=<n> parts=<k>` and one code file `part<i>.code` per part.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::codes::{Code, Partition, MAX_WORDS};
use crate::error::{Error, Result};
use crate::gf::{self, Elem};

pub const MANIFEST: &str = "manifest";

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.display().to_string(),
        source,
    }
}

pub fn write_code(code: &Code) -> String {
    let q = code.field().q();
    let wide = q > 10;
    let mut out = String::with_capacity(32 + code.len() * (code.n() + 1) * if wide { 4 } else { 1 });
    write!(out, "q={q} n={} count={}", code.n(), code.len()).unwrap();
    if wide {
        out.push_str(" sep=,");
    }
    out.push('\n');
    for w in code.words() {
        if wide {
            for (i, x) in w.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write!(out, "{x}").unwrap();
            }
        } else {
            out.extend(w.iter().map(|&x| char::from(b'0' + x)));
        }
        out.push('\n');
    }
    out
}

/// Header fields shared by code files and partition manifests.
#[derive(Debug, Default)]
struct Header {
    q: Option<usize>,
    n: Option<usize>,
    count: Option<usize>,
    parts: Option<usize>,
    comma: bool,
}

fn parse_header(line: &str, count_key: &str) -> Result<Header> {
    let mut h = Header::default();
    for token in line.split(' ') {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| Error::parse(1, format!("expected key=value, got {token:?}")))?;
        let number = || -> Result<usize> {
            if value.is_empty() || !value.bytes().all(|b| b.is_ascii_digit()) || value.len() > 9 {
                return Err(Error::parse(1, format!("bad value for {key}: {value:?}")));
            }
            Ok(value.parse().unwrap())
        };
        let slot = match key {
            "q" => &mut h.q,
            "n" => &mut h.n,
            "count" if count_key == "count" => &mut h.count,
            "parts" if count_key == "parts" => &mut h.parts,
            "sep" if count_key == "count" => {
                if value != "," || h.comma {
                    return Err(Error::parse(1, format!("unsupported separator {value:?}")));
                }
                h.comma = true;
                continue;
            }
            _ => return Err(Error::parse(1, format!("unknown header key {key:?}"))),
        };
        if slot.replace(number()?).is_some() {
            return Err(Error::parse(1, format!("repeated header key {key:?}")));
        }
    }
    Ok(h)
}

/// Splits into lines, requiring LF endings and a single optional final newline.
fn lines(text: &str) -> Result<Vec<&str>> {
    if let Some(pos) = text.find('\r') {
        let line = text[..pos].matches('\n').count() + 1;
        return Err(Error::parse(line, "carriage return in input"));
    }
    let body = text.strip_suffix('\n').unwrap_or(text);
    Ok(body.split('\n').collect())
}

/// Parses one word: digits for q <= 10, comma-separated indices otherwise.
pub fn parse_word(q: usize, s: &str) -> Result<Vec<Elem>> {
    parse_word_at(q, s, q > 10, 1)
}

fn parse_word_at(q: usize, s: &str, comma: bool, line: usize) -> Result<Vec<Elem>> {
    let bad = |what: &str| Error::parse(line, format!("{what} in word {s:?}"));
    if comma {
        s.split(',')
            .map(|t| {
                if t.is_empty() || t.len() > 3 || !t.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad("malformed entry"));
                }
                let x: usize = t.parse().unwrap();
                if x >= q {
                    return Err(bad("entry out of range"));
                }
                Ok(x as Elem)
            })
            .collect()
    } else {
        s.bytes()
            .map(|b| match b {
                b'0'..=b'9' if ((b - b'0') as usize) < q => Ok(b - b'0'),
                b'0'..=b'9' => Err(bad("digit out of range")),
                _ => Err(bad("non-digit character")),
            })
            .collect()
    }
}

pub fn parse_code(text: &str) -> Result<Code> {
    let lines = lines(text)?;
    let header = parse_header(lines[0], "count")?;
    let (Some(q), Some(n), Some(count)) = (header.q, header.n, header.count) else {
        return Err(Error::parse(1, "header needs q, n and count"));
    };
    let field = gf::field(q).map_err(|e| Error::parse(1, e.to_string()))?;
    if n == 0 {
        return Err(Error::parse(1, "n must be positive"));
    }
    if q > 10 && !header.comma {
        return Err(Error::parse(1, "q > 10 needs sep=,"));
    }
    if count as u128 > MAX_WORDS {
        return Err(Error::parse(1, format!("count {count} exceeds the supported maximum")));
    }
    let words = &lines[1..];
    if words.len() != count {
        return Err(Error::parse(1, format!("header declares {count} words, found {}", words.len())));
    }
    let mut data = Vec::with_capacity(count.saturating_mul(n).min(text.len()));
    for (i, s) in words.iter().enumerate() {
        let w = parse_word_at(q, s, header.comma, i + 2)?;
        if w.len() != n {
            return Err(Error::parse(i + 2, format!("word has length {}, expected {n}", w.len())));
        }
        data.extend_from_slice(&w);
    }
    Code::from_flat(field, n, data)
}

pub fn read_code_file(path: impl AsRef<Path>) -> Result<Code> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_code(&text)
}

pub fn write_code_file(path: impl AsRef<Path>, code: &Code) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, write_code(code)).map_err(io_err(path))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub q: usize,
    pub n: usize,
    pub parts: usize,
}

impl Manifest {
    pub fn render(&self) -> String {
        format!("q={} n={} parts={}\n", self.q, self.n, self.parts)
    }
}

pub fn parse_manifest(text: &str) -> Result<Manifest> {
    let lines = lines(text)?;
    if lines.len() != 1 {
        return Err(Error::parse(2, "manifest has a single line"));
    }
    let h = parse_header(lines[0], "parts")?;
    match (h.q, h.n, h.parts) {
        (Some(q), Some(n), Some(parts)) if parts > 0 && n > 0 => Ok(Manifest { q, n, parts }),
        _ => Err(Error::parse(1, "manifest needs positive q, n and parts")),
    }
}

pub fn part_file_name(i: usize) -> String {
    format!("part{i}.code")
}

pub fn write_partition(dir: impl AsRef<Path>, partition: &Partition) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let ambient = partition.ambient();
    let manifest = Manifest {
        q: ambient.field().q(),
        n: ambient.n(),
        parts: partition.len(),
    };
    let mpath = dir.join(MANIFEST);
    fs::write(&mpath, manifest.render()).map_err(io_err(&mpath))?;
    for (i, part) in partition.parts().iter().enumerate() {
        write_code_file(dir.join(part_file_name(i)), part)?;
    }
    Ok(())
}

pub fn read_partition(dir: impl AsRef<Path>) -> Result<Partition> {
    let dir = dir.as_ref();
    let mpath = dir.join(MANIFEST);
    let manifest = parse_manifest(&fs::read_to_string(&mpath).map_err(io_err(&mpath))?)?;
    let mut parts = Vec::with_capacity(manifest.parts.min(1024));
    for i in 0..manifest.parts {
        let code = read_code_file(dir.join(part_file_name(i)))?;
        if code.field().q() != manifest.q || code.n() != manifest.n {
            return Err(Error::PartitionInvalid(format!("{} does not match the manifest", part_file_name(i))));
        }
        parts.push(code);
    }
    Partition::from_parts(parts)
}
