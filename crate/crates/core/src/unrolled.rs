//! Optimized keystream engine.
//!
//! The LFSR is never shifted: over 20 steps (the least common multiple of the
//! register length and the four-step output group) each cell is overwritten in
//! place exactly twice, and cell roles are resolved at compile time through
//! const-generic step indices. One call produces 80 bytes.

use crate::gf::{div_alpha, mul_alpha, AlphaTables};
use crate::keystream::{mux, trans, CoreState, FsmState, LfsrState, LFSR_LEN};
use crate::serpent::{serpent1, Quartet};

/// Bytes produced per unrolled block.
pub const BLOCK_BYTES: usize = 80;

#[derive(Clone, Copy)]
pub struct Engine {
    s: [u32; LFSR_LEN],
    r1: u32,
    r2: u32,
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine").finish_non_exhaustive()
    }
}

#[inline(always)]
fn step(k: usize, s: &mut [u32; LFSR_LEN], r1: &mut u32, r2: &mut u32, t: &AlphaTables) -> (u32, u32) {
    let i0 = k % LFSR_LEN;
    let i1 = (k + 1) % LFSR_LEN;
    let i3 = (k + 3) % LFSR_LEN;
    let i8 = (k + 8) % LFSR_LEN;
    let i9 = (k + 9) % LFSR_LEN;

    let old_r1 = *r1;
    *r1 = r2.wrapping_add(mux(old_r1 & 1, s[i1], s[i1] ^ s[i8]));
    *r2 = trans(old_r1);
    let dropped = s[i0];
    s[i0] = s[i9] ^ div_alpha(s[i3], t) ^ mul_alpha(dropped, t);
    let f = s[i9].wrapping_add(*r1) ^ *r2;
    (f, dropped)
}

#[inline(always)]
fn quad(
    k: usize,
    s: &mut [u32; LFSR_LEN],
    r1: &mut u32,
    r2: &mut u32,
    t: &AlphaTables,
    out: &mut [u8],
) {
    let (f0, v0) = step(k, s, r1, r2, t);
    let (f1, v1) = step(k + 1, s, r1, r2, t);
    let (f2, v2) = step(k + 2, s, r1, r2, t);
    let (f3, v3) = step(k + 3, s, r1, r2, t);
    let z = serpent1(Quartet::new(f3, f2, f1, f0)) ^ Quartet::new(v3, v2, v1, v0);
    out[0..4].copy_from_slice(&z.y0.to_le_bytes());
    out[4..8].copy_from_slice(&z.y1.to_le_bytes());
    out[8..12].copy_from_slice(&z.y2.to_le_bytes());
    out[12..16].copy_from_slice(&z.y3.to_le_bytes());
}

impl Engine {
    pub fn from_state(st: &CoreState) -> Engine {
        debug_assert_eq!(st.step_index % 20, 0);
        Engine {
            s: st.lfsr.cells,
            r1: st.fsm.r1,
            r2: st.fsm.r2,
        }
    }

    /// The equivalent shifting-form state (valid between blocks).
    pub fn to_state(&self, step_index: u64) -> CoreState {
        CoreState {
            lfsr: LfsrState { cells: self.s },
            fsm: FsmState { r1: self.r1, r2: self.r2 },
            step_index,
        }
    }

    /// Runs 20 steps and writes 80 keystream bytes.
    #[inline]
    pub fn block(&mut self, t: &AlphaTables, out: &mut [u8; BLOCK_BYTES]) {
        let mut s = self.s;
        let mut r1 = self.r1;
        let mut r2 = self.r2;
        quad(0, &mut s, &mut r1, &mut r2, t, &mut out[0..16]);
        quad(4, &mut s, &mut r1, &mut r2, t, &mut out[16..32]);
        quad(8, &mut s, &mut r1, &mut r2, t, &mut out[32..48]);
        quad(12, &mut s, &mut r1, &mut r2, t, &mut out[48..64]);
        quad(16, &mut s, &mut r1, &mut r2, t, &mut out[64..80]);
        self.s = s;
        self.r1 = r1;
        self.r2 = r2;
    }
}
