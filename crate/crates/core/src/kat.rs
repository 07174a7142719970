//! Known-answer-test tooling: a fully instrumented trace of the first 160
//! keystream bytes, and a small line-oriented KAT file format.
//!
//! KAT files hold one record per `(key, IV)` pair:
//!
//! ```text
//! KEY=00112233445566778899aabbccddeeff
//! IV=8899aabbccddeeff0011223344556677
//! STREAM=fa61dbeb71178131...
//! ```
//!
//! Records are separated by one blank line. Hex is written lowercase; `STREAM`
//! always carries exactly 160 bytes. Lines starting with `#` are ignored.

use std::fmt::{self, Write as _};
use std::io::{self, BufRead, Write};

use crate::cipher::{iv_taps, CipherKey, Sosemanuk};
use crate::gf::AlphaTables;
use crate::keystream::{combine_quad, init_from_taps, serpent1_input, FsmState, LfsrState, StepRecord};
use crate::serpent::{serpent1, Quartet, SUBKEYS};
use crate::Error;

/// Keystream bytes covered by a trace and by a KAT record.
pub const STREAM_LEN: usize = 160;
const QUADS: usize = STREAM_LEN / 16;

/// One group of four steps and the 16 bytes it produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceQuad {
    pub steps: [StepRecord; 4],
    pub serpent1_input: Quartet,
    pub serpent1_output: Quartet,
    pub output: [u8; 16],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub key: Vec<u8>,
    /// Key after padding to 256 bits, as bytes in little-endian order.
    pub expanded_key: [u8; 32],
    pub subkeys: [Quartet; SUBKEYS],
    pub iv: [u8; 16],
    pub iv_words: Quartet,
    /// `s_1 .. s_10`.
    pub initial_lfsr: LfsrState,
    pub initial_fsm: FsmState,
    pub quads: Vec<TraceQuad>,
    pub stream: Vec<u8>,
}

/// Runs the shifting reference core with every intermediate recorded.
pub fn emit_trace(key: &[u8], iv: &[u8]) -> Result<TraceRecord, Error> {
    let cipher_key = CipherKey::new(key)?;
    trace_with_key(&cipher_key, key, iv)
}

fn trace_with_key(cipher_key: &CipherKey, key: &[u8], iv: &[u8]) -> Result<TraceRecord, Error> {
    let taps = iv_taps(cipher_key, iv)?;
    let iv: [u8; 16] = iv.try_into().expect("length checked by iv_taps");
    let tables = AlphaTables::get();
    let mut state = init_from_taps(&taps);
    let initial_lfsr = state.lfsr;
    let initial_fsm = state.fsm;

    let mut quads = Vec::with_capacity(QUADS);
    let mut stream = Vec::with_capacity(STREAM_LEN);
    for _ in 0..QUADS {
        let steps = [state.step(tables), state.step(tables), state.step(tables), state.step(tables)];
        let input = serpent1_input(&steps);
        let z = combine_quad(&steps);
        let mut output = [0u8; 16];
        for (dst, w) in output.chunks_exact_mut(4).zip(z) {
            dst.copy_from_slice(&w.to_le_bytes());
        }
        stream.extend_from_slice(&output);
        quads.push(TraceQuad {
            steps,
            serpent1_input: input,
            serpent1_output: serpent1(input),
            output,
        });
    }

    Ok(TraceRecord {
        key: key.to_vec(),
        expanded_key: *cipher_key.schedule().padded_key(),
        subkeys: *cipher_key.schedule().subkeys(),
        iv,
        iv_words: Quartet::from_le_bytes(&iv),
        initial_lfsr,
        initial_fsm,
        quads,
        stream,
    })
}

fn grouped(hex: &str, group: usize) -> String {
    hex.as_bytes()
        .chunks(group)
        .map(|c| std::str::from_utf8(c).unwrap())
        .collect::<Vec<_>>()
        .join(" ")
}

fn words(ws: &[u32]) -> String {
    ws.iter().map(|w| format!("{w:08x}")).collect::<Vec<_>>().join(" ")
}

fn quartet(q: Quartet) -> String {
    words(&[q.y3, q.y2, q.y1, q.y0])
}

impl fmt::Display for TraceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "key:            {}", hex::encode(&self.key))?;
        // The padded key read as one little-endian 256-bit number.
        let mut be = self.expanded_key;
        be.reverse();
        writeln!(f, "expanded key:   {}", grouped(&hex::encode(be), 8))?;
        writeln!(f, "subkeys (K3 K2 K1 K0):")?;
        for (i, k) in self.subkeys.iter().enumerate() {
            writeln!(f, "  K{i:02}: {}", quartet(*k))?;
        }
        writeln!(f, "iv:             {}", hex::encode(self.iv))?;
        writeln!(f, "iv (I3 I2 I1 I0): {}", quartet(self.iv_words))?;
        writeln!(f, "initial LFSR (s1 .. s10): {}", words(&self.initial_lfsr.cells))?;
        writeln!(
            f,
            "initial FSM: R1 = {:08x}  R2 = {:08x}",
            self.initial_fsm.r1, self.initial_fsm.r2
        )?;
        let mut t = 1;
        for (qi, quad) in self.quads.iter().enumerate() {
            writeln!(f)?;
            writeln!(f, "quad {}:", qi + 1)?;
            for step in &quad.steps {
                writeln!(f, "  t = {t}")?;
                writeln!(f, "    FSM: R1 = {:08x}  R2 = {:08x}", step.fsm.r1, step.fsm.r2)?;
                writeln!(f, "    LFSR: {}", words(&step.lfsr.cells))?;
                writeln!(f, "    dropped s{t}: {:08x}", step.dropped)?;
                writeln!(f, "    f{t}: {:08x}", step.f)?;
                t += 1;
            }
            writeln!(f, "  Serpent1 input:  {}", quartet(quad.serpent1_input))?;
            writeln!(f, "  Serpent1 output: {}", quartet(quad.serpent1_output))?;
            writeln!(f, "  output: {}", grouped(&hex::encode(quad.output), 2))?;
        }
        writeln!(f)?;
        writeln!(f, "stream ({} bytes):", self.stream.len())?;
        for line in self.stream.chunks(16) {
            writeln!(f, "  {}", grouped(&hex::encode(line), 2))?;
        }
        Ok(())
    }
}

/// One known-answer record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KatEntry {
    pub key: Vec<u8>,
    pub iv: Vec<u8>,
    pub stream: Vec<u8>,
}

impl KatEntry {
    /// Computes the expected stream for `(key, iv)` with the library cipher.
    pub fn generate(key: &[u8], iv: &[u8]) -> Result<KatEntry, Error> {
        let mut c = Sosemanuk::with_key_iv(key, iv)?;
        Ok(KatEntry {
            key: key.to_vec(),
            iv: iv.to_vec(),
            stream: c.keystream(STREAM_LEN),
        })
    }
}

pub fn write_kat<W: Write>(entries: &[KatEntry], mut sink: W) -> io::Result<()> {
    for (i, e) in entries.iter().enumerate() {
        if i > 0 {
            writeln!(sink)?;
        }
        writeln!(sink, "KEY={}", hex::encode(&e.key))?;
        writeln!(sink, "IV={}", hex::encode(&e.iv))?;
        writeln!(sink, "STREAM={}", hex::encode(&e.stream))?;
    }
    Ok(())
}

pub fn kat_to_string(entries: &[KatEntry]) -> String {
    let mut buf = Vec::new();
    write_kat(entries, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("hex output is ASCII")
}

fn parse_hex(line: usize, field: &str, value: &str) -> Result<Vec<u8>, Error> {
    if !value.len().is_multiple_of(2) {
        return Err(Error::KatParse {
            line,
            msg: format!("{field}: odd number of hex digits ({})", value.len()),
        });
    }
    hex::decode(value).map_err(|e| Error::KatParse {
        line,
        msg: format!("{field}: {e}"),
    })
}

#[derive(Default)]
struct Partial {
    key: Option<Vec<u8>>,
    iv: Option<Vec<u8>>,
    start: usize,
}

/// Parses KAT text.
pub fn parse_kat(text: &str) -> Result<Vec<KatEntry>, Error> {
    let mut entries = Vec::new();
    let mut cur: Option<Partial> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.starts_with('#') {
            continue;
        }
        if l.is_empty() {
            if let Some(p) = cur.take() {
                return Err(Error::KatParse {
                    line,
                    msg: format!("record starting at line {} is incomplete", p.start),
                });
            }
            continue;
        }
        let (field, value) = l.split_once('=').ok_or_else(|| Error::KatParse {
            line,
            msg: format!("expected FIELD=hex, got {l:?}"),
        })?;
        let (field, value) = (field.trim(), value.trim());
        match (field, cur.as_mut()) {
            ("KEY", None) => {
                cur = Some(Partial {
                    key: Some(parse_hex(line, field, value)?),
                    iv: None,
                    start: line,
                })
            }
            ("IV", Some(p)) if p.iv.is_none() => p.iv = Some(parse_hex(line, field, value)?),
            ("STREAM", Some(p)) if p.iv.is_some() => {
                if value.len() != 2 * STREAM_LEN {
                    return Err(Error::KatParse {
                        line,
                        msg: format!(
                            "STREAM: expected {} hex digits, got {}",
                            2 * STREAM_LEN,
                            value.len()
                        ),
                    });
                }
                let stream = parse_hex(line, field, value)?;
                let p = cur.take().unwrap();
                entries.push(KatEntry {
                    key: p.key.unwrap(),
                    iv: p.iv.unwrap(),
                    stream,
                });
            }
            ("KEY" | "IV" | "STREAM", _) => {
                return Err(Error::KatParse {
                    line,
                    msg: format!("unexpected {field} (records are KEY, IV, STREAM in order)"),
                })
            }
            _ => {
                return Err(Error::KatParse {
                    line,
                    msg: format!("unknown field {field:?}"),
                })
            }
        }
    }
    if let Some(p) = cur {
        return Err(Error::KatParse {
            line: text.lines().count(),
            msg: format!("record starting at line {} is incomplete", p.start),
        });
    }
    Ok(entries)
}

pub fn read_kat<R: BufRead>(mut source: R) -> Result<Vec<KatEntry>, Error> {
    let mut text = String::new();
    source.read_to_string(&mut text).map_err(|e| Error::KatParse {
        line: text.lines().count() + 1,
        msg: e.to_string(),
    })?;
    parse_kat(&text)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KatOutcome {
    pub index: usize,
    pub passed: bool,
    /// Why the entry failed, if it did.
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KatReport {
    pub outcomes: Vec<KatOutcome>,
}

impl KatReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> usize {
        self.outcomes.iter().filter(|o| !o.passed).count()
    }
}

impl fmt::Display for KatReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            let mut line = format!("entry {}: {}", o.index, if o.passed { "PASS" } else { "FAIL" });
            if let Some(d) = &o.detail {
                let _ = write!(line, " ({d})");
            }
            writeln!(f, "{line}")?;
        }
        write!(
            f,
            "{} of {} entries passed",
            self.outcomes.len() - self.failures(),
            self.outcomes.len()
        )
    }
}

/// Regenerates each entry's stream and compares.
pub fn verify_kat(entries: &[KatEntry]) -> KatReport {
    let outcomes = entries
        .iter()
        .enumerate()
        .map(|(index, e)| match Sosemanuk::with_key_iv(&e.key, &e.iv) {
            Err(err) => KatOutcome {
                index,
                passed: false,
                detail: Some(err.to_string()),
            },
            Ok(mut c) => {
                let got = c.keystream(e.stream.len());
                match got.iter().zip(&e.stream).position(|(a, b)| a != b) {
                    None => KatOutcome {
                        index,
                        passed: true,
                        detail: None,
                    },
                    Some(at) => KatOutcome {
                        index,
                        passed: false,
                        detail: Some(format!("first mismatch at byte {at}")),
                    },
                }
            }
        })
        .collect();
    KatReport { outcomes }
}

/// Published vectors from the reference implementation and the eSTREAM
/// submission package: `(key, iv, expected keystream prefix)` in hex.
pub const PUBLISHED_VECTORS: &[(&str, &str, &str)] = &[
    (
        "00112233445566778899aabbccddeeff",
        "8899aabbccddeeff0011223344556677",
        "fa61dbeb71178131a77c714bd2eabf4e1394207a25698aa1308f2f063a0f7606\
         04cf67569ba59a3dfad7f00145c78d29c5ffe5f964950486424451952c84039d\
         234d9c37eecbbca1ebfb0dd16ea1194a6afc1a460e33e33fe8d55c48977079c6\
         87810d74feddee1b3986218fb1e1c1765e4df64d7f6911c19a270c59c74b2446\
         1717f86ce3b11808facd4f2e714168da44cf6360d54dda2241bcb79401a4edcc",
    ),
    (
        "8000000000000000000000000000000000000000000000000000000000000000",
        "00000000000000000000000000000000",
        "1782fabff497a0e89e16e1bcf22f0fe8aa8c566d293aa35b2425e4f26e31c3e7\
         701c08a0d614af3d3861a7dff7d6a38a0efe84a29fadf68d390a3d15b75c972d",
    ),
    (
        "3f3f3f3f3f3f3f3f3f3f3f3f3f3f3f3f",
        "00000000000000000000000000000000",
        "7d755f30a2b747a50d7d28147edf0b3e3fab6856a7373c7306c00d1d40769693\
         54d7ab4343c0115e7839502c5c699ed06db119968aebfd08d8b968a7161d613f",
    ),
    (
        "5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a5a",
        "00000000000000000000000000000000",
        "f5d7d72686322d1751afd16a1dd98282d2b9a1ee0c305df52f86ae1b831e90c2\
         2e2de089cee656a992736385d9135b823b3611098674bf820986a4342b89abf7",
    ),
    (
        "8788898a8b8c8d8e8f909192939495969798999a9b9c9d9e9fa0a1a2a3a4",
        "00000000000000000000000000000000",
        "9d7ee5a10bbb0756d66b8daa5ae08f41b05c9e7c6b13532eaa81f224282b61c6\
         6deee5af6251db26c49b865c5ad4250ae89787fc86c35409cf2986cf820293aa",
    ),
    (
        "cfd0d1d2d3d4d5d6d7d8d9dadbdcdddedfe0e1e2e3e4e5e6e7e8e9eaebecedee",
        "00000000000000000000000000000000",
        "f028923659c6c0a17065e013368d93ebcf2f4fd892b6e27e104ef0a2605708ea\
         26336ae966d5058bc144f7954fe2fc3c258f00734aa5bec8281814b746197084",
    ),
    (
        "0f62b5085bae0154a7fa4da0f34699ec3f92e5388bde3184d72a7dd02376c91c",
        "288ff65dc42b92f960c72e95fc63ca31",
        "1fc4f2e266b21c24fddb3492d40a3fa6de32cdf13908511e84420abdfa1d3b0f\
         ec600f83409c57cbe0394b90cdb1d759243efd8b8e2ab7bc453a8d8a3515183e",
    ),
];

/// Checks the library against [`PUBLISHED_VECTORS`].
pub fn self_check() -> bool {
    PUBLISHED_VECTORS.iter().all(|(k, iv, want)| {
        let want = hex::decode(want).expect("valid hex constant");
        let (k, iv) = (hex::decode(k).unwrap(), hex::decode(iv).unwrap());
        Sosemanuk::with_key_iv(&k, &iv)
            .map(|mut c| c.keystream(want.len()) == want)
            .unwrap_or(false)
    })
}
