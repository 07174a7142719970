//! Throughput harness with three workloads: long streams, IV-setup-per-packet
//! encryption at 40, 576 and 1500 bytes, and key agility over many live
//! sessions encrypting short blocks. Key setup and IV setup are timed on their
//! own.

use std::collections::BTreeMap;
use std::fmt;
use std::hint::black_box;
use std::time::{Duration, Instant};

use crate::cipher::{CipherKey, Sosemanuk};
use crate::gf::AlphaTables;
use crate::instrument;
use crate::kat;

/// Packet lengths of the packet workload.
pub const PACKET_SIZES: [usize; 3] = [40, 576, 1500];

#[derive(Clone, Debug)]
pub struct BenchConfig {
    /// Measurement time per workload.
    pub duration: Duration,
    /// Chunk size for the long-stream workload.
    pub long_chunk: usize,
    /// Block size for the agility workload.
    pub agility_block: usize,
    /// Memory filled with live sessions in the agility workload.
    pub agility_memory: usize,
    /// Nominal CPU frequency, for cycles-per-byte figures.
    pub cpu_hz: Option<f64>,
    /// Threads for the long-stream workload; each runs its own instance.
    pub threads: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            duration: Duration::from_secs(2),
            long_chunk: 4096,
            agility_block: 256,
            agility_memory: 16 << 20,
            cpu_hz: None,
            threads: 1,
        }
    }
}

impl BenchConfig {
    /// Shrinks time and agility memory by `factor` (in `(0, 1]`).
    pub fn scaled(mut self, factor: f64) -> Self {
        let factor = factor.clamp(1e-3, 1.0);
        self.duration = self.duration.mul_f64(factor);
        self.agility_memory = ((self.agility_memory as f64 * factor) as usize).max(1 << 16);
        self
    }
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    /// Bytes/second, unrolled engine, aggregated over all threads.
    pub long_stream_rate: f64,
    /// Bytes/second of the shifting reference core on the same workload.
    pub reference_stream_rate: f64,
    /// Bytes/second per packet size, one IV setup per packet included.
    pub packet_rates: BTreeMap<usize, f64>,
    pub agility_rate: f64,
    pub agility_sessions: usize,
    /// Mean seconds per key setup.
    pub key_setup_time: f64,
    /// Mean seconds per IV setup.
    pub iv_setup_time: f64,
    /// Every packet performed one IV setup and no key setup.
    pub packet_setup_counts_ok: bool,
    pub kat_before: bool,
    pub kat_after: bool,
    pub threads: usize,
    pub cpu_hz: Option<f64>,
    pub elapsed: Duration,
}

impl BenchReport {
    fn cpb(&self, rate: f64) -> Option<f64> {
        self.cpu_hz.map(|hz| hz / rate)
    }

    fn rows(&self) -> Vec<(String, f64, Option<f64>)> {
        let mut rows = vec![
            ("long_stream".to_string(), self.long_stream_rate, self.cpb(self.long_stream_rate)),
            (
                "long_stream_reference".to_string(),
                self.reference_stream_rate,
                self.cpb(self.reference_stream_rate),
            ),
        ];
        for (size, rate) in &self.packet_rates {
            rows.push((format!("packet_{size}"), *rate, self.cpb(*rate)));
        }
        rows.push(("agility".to_string(), self.agility_rate, self.cpb(self.agility_rate)));
        rows
    }

    /// One `key=value` pair per line.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        for (name, rate, cpb) in self.rows() {
            out.push_str(&format!("{name}_bytes_per_sec={rate:.0}\n"));
            if let Some(c) = cpb {
                out.push_str(&format!("{name}_cycles_per_byte={c:.2}\n"));
            }
        }
        out.push_str(&format!("agility_sessions={}\n", self.agility_sessions));
        out.push_str(&format!("key_setup_seconds={:.3e}\n", self.key_setup_time));
        out.push_str(&format!("iv_setup_seconds={:.3e}\n", self.iv_setup_time));
        if let Some(hz) = self.cpu_hz {
            out.push_str(&format!("key_setup_cycles={:.0}\n", self.key_setup_time * hz));
            out.push_str(&format!("iv_setup_cycles={:.0}\n", self.iv_setup_time * hz));
        }
        out.push_str(&format!("threads={}\n", self.threads));
        out.push_str(&format!("packet_setup_counts_ok={}\n", self.packet_setup_counts_ok));
        out.push_str(&format!("kat_before={}\nkat_after={}\n", self.kat_before, self.kat_after));
        out.push_str(&format!("elapsed_seconds={:.2}\n", self.elapsed.as_secs_f64()));
        out
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<24} {:>14} {:>12}", "workload", "MB/s", "cycles/byte")?;
        for (name, rate, cpb) in self.rows() {
            let cpb = cpb.map_or_else(|| "-".to_string(), |c| format!("{c:.2}"));
            writeln!(f, "{:<24} {:>14.1} {:>12}", name, rate / 1e6, cpb)?;
        }
        writeln!(f, "{:<24} {:>14.0} ns", "key setup", self.key_setup_time * 1e9)?;
        writeln!(f, "{:<24} {:>14.0} ns", "IV setup", self.iv_setup_time * 1e9)?;
        writeln!(f, "agility sessions: {}, threads: {}", self.agility_sessions, self.threads)?;
        write!(
            f,
            "self-check before/after: {}/{}, elapsed {:.1} s",
            self.kat_before,
            self.kat_after,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Repeats `op` until `budget` has elapsed; returns (iterations, seconds).
fn timed(budget: Duration, mut op: impl FnMut()) -> (u64, f64) {
    let start = Instant::now();
    let mut iters = 0u64;
    let mut batch = 1u64;
    loop {
        for _ in 0..batch {
            op();
        }
        iters += batch;
        let el = start.elapsed();
        if el >= budget {
            return (iters, el.as_secs_f64());
        }
        batch = (batch * 2).min(1 << 16);
    }
}

const BENCH_KEY: [u8; 16] = *b"sosemanuk-bench!";

fn iv_for(n: u64) -> [u8; 16] {
    let mut iv = [0u8; 16];
    iv[..8].copy_from_slice(&n.to_le_bytes());
    iv
}

pub fn long_stream_rate(cfg: &BenchConfig) -> f64 {
    let key = CipherKey::new(&BENCH_KEY).unwrap();
    let run = |seed: u64| {
        let mut c = Sosemanuk::new(&key, &iv_for(seed)).unwrap();
        let mut buf = vec![0u8; cfg.long_chunk];
        let (n, secs) = timed(cfg.duration, || {
            c.apply_keystream(&mut buf);
            black_box(&buf);
        });
        n as f64 * cfg.long_chunk as f64 / secs
    };
    if cfg.threads <= 1 {
        return run(0);
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..cfg.threads as u64).map(|i| s.spawn(move || run(i))).collect();
        handles.into_iter().map(|h| h.join().unwrap()).sum()
    })
}

/// Same workload through the shifting, one-step-at-a-time core.
pub fn reference_stream_rate(cfg: &BenchConfig) -> f64 {
    let key = CipherKey::new(&BENCH_KEY).unwrap();
    let mut state = crate::cipher::initial_state(&key, &iv_for(0)).unwrap();
    let tables = AlphaTables::get();
    let chunk = cfg.long_chunk / 16 * 16;
    let mut ks = vec![0u8; chunk];
    let mut buf = vec![0u8; chunk];
    let (n, secs) = timed(cfg.duration, || {
        state.fill_bytes(tables, &mut ks);
        for (b, k) in buf.iter_mut().zip(&ks) {
            *b ^= k;
        }
        black_box(&buf);
    });
    n as f64 * chunk as f64 / secs
}

/// Returns (bytes/second, setup counts were exactly one IV setup per packet).
pub fn packet_rate(cfg: &BenchConfig, size: usize) -> (f64, bool) {
    let key = CipherKey::new(&BENCH_KEY).unwrap();
    let mut buf = vec![0u8; size];
    let mut counter = 0u64;
    let before = instrument::snapshot();
    let (n, secs) = timed(cfg.duration, || {
        let mut c = Sosemanuk::new(&key, &iv_for(counter)).unwrap();
        c.apply_keystream(&mut buf);
        black_box(&buf);
        counter += 1;
    });
    let delta = instrument::snapshot() - before;
    let ok = delta.serpent24_runs == n && delta.key_schedules == 0;
    (n as f64 * size as f64 / secs, ok)
}

/// Returns (bytes/second, number of sessions).
pub fn agility_rate(cfg: &BenchConfig) -> (f64, usize) {
    let key = CipherKey::new(&BENCH_KEY).unwrap();
    let sessions = (cfg.agility_memory / std::mem::size_of::<Sosemanuk>()).max(1);
    let mut live: Vec<Sosemanuk> = (0..sessions as u64)
        .map(|i| Sosemanuk::new(&key, &iv_for(i)).unwrap())
        .collect();
    let mut buf = vec![0u8; cfg.agility_block];
    let mut next = 0usize;
    let (n, secs) = timed(cfg.duration, || {
        live[next].apply_keystream(&mut buf);
        black_box(&buf);
        next += 1;
        if next == sessions {
            next = 0;
        }
    });
    (n as f64 * cfg.agility_block as f64 / secs, sessions)
}

pub fn key_setup_time(cfg: &BenchConfig) -> f64 {
    let mut key = BENCH_KEY;
    let (n, secs) = timed(cfg.duration, || {
        key[0] = key[0].wrapping_add(1);
        black_box(CipherKey::new(black_box(&key)).unwrap());
    });
    secs / n as f64
}

pub fn iv_setup_time(cfg: &BenchConfig) -> f64 {
    let key = CipherKey::new(&BENCH_KEY).unwrap();
    let mut counter = 0u64;
    let (n, secs) = timed(cfg.duration, || {
        counter += 1;
        black_box(Sosemanuk::new(&key, black_box(&iv_for(counter))).unwrap());
    });
    secs / n as f64
}

/// Runs every workload once, with a known-answer check before and after.
pub fn run_bench(cfg: &BenchConfig) -> BenchReport {
    let start = Instant::now();
    let kat_before = kat::self_check();
    let long_stream_rate = long_stream_rate(cfg);
    let reference_stream_rate = reference_stream_rate(cfg);
    let mut packet_rates = BTreeMap::new();
    let mut packet_setup_counts_ok = true;
    for size in PACKET_SIZES {
        let (rate, ok) = packet_rate(cfg, size);
        packet_rates.insert(size, rate);
        packet_setup_counts_ok &= ok;
    }
    let (agility_rate, agility_sessions) = agility_rate(cfg);
    let key_setup_time = key_setup_time(cfg);
    let iv_setup_time = iv_setup_time(cfg);
    let kat_after = kat::self_check();
    BenchReport {
        long_stream_rate,
        reference_stream_rate,
        packet_rates,
        agility_rate,
        agility_sessions,
        key_setup_time,
        iv_setup_time,
        packet_setup_counts_ok,
        kat_before,
        kat_after,
        threads: cfg.threads.max(1),
        cpu_hz: cfg.cpu_hz,
        elapsed: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_bench_is_complete() {
        let cfg = BenchConfig {
            duration: Duration::from_millis(20),
            agility_memory: 1 << 16,
            cpu_hz: Some(3.0e9),
            ..BenchConfig::default()
        };
        let r = run_bench(&cfg);
        assert!(r.long_stream_rate > 0.0 && r.reference_stream_rate > 0.0);
        assert_eq!(r.packet_rates.keys().copied().collect::<Vec<_>>(), PACKET_SIZES);
        assert!(r.packet_rates.values().all(|&v| v > 0.0));
        assert!(r.agility_rate > 0.0 && r.agility_sessions > 0);
        assert!(r.key_setup_time > 0.0 && r.iv_setup_time > 0.0);
        assert!(r.packet_setup_counts_ok && r.kat_before && r.kat_after);
        let kv = r.to_key_value();
        assert!(kv.contains("packet_40_cycles_per_byte="));
        assert!(r.to_string().contains("agility"));
    }

    #[test]
    fn threaded_long_stream() {
        let cfg = BenchConfig {
            duration: Duration::from_millis(20),
            threads: 2,
            ..BenchConfig::default()
        };
        assert!(long_stream_rate(&cfg) > 0.0);
    }
}
