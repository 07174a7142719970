//! The keystream generator: a ten-cell LFSR over GF(2^32), a two-register FSM,
//! and the Serpent1 output transformation applied to every four steps.
//!
//! Everything in this module is the plain, physically shifting formulation.
//! It is the readable twin of the unrolled engine in [`crate::unrolled`] and is
//! what the trace tooling instruments.

use crate::gf::{div_alpha, mul_alpha, AlphaTables};
use crate::serpent::{serpent1, Quartet, SerpentTaps};

/// FSM multiplier: the first ten decimals of pi, read as hex digits.
pub const TRANS_MULTIPLIER: u32 = 0x5465_5307;

/// Number of LFSR cells.
pub const LFSR_LEN: usize = 10;

/// `(M * z mod 2^32) <<< 7`.
#[inline(always)]
pub fn trans(z: u32) -> u32 {
    z.wrapping_mul(TRANS_MULTIPLIER).rotate_left(7)
}

/// Selects `x` when `c == 0` and `y` when `c == 1`, without branching.
#[inline(always)]
pub fn mux(c: u32, x: u32, y: u32) -> u32 {
    debug_assert!(c <= 1);
    x ^ ((x ^ y) & c.wrapping_neg())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct FsmState {
    pub r1: u32,
    pub r2: u32,
}

/// One FSM transition. Takes the cells `s_{t+1}`, `s_{t+8}`, `s_{t+9}` and
/// returns the new registers together with the intermediate output `f_t`.
#[inline(always)]
pub fn fsm_step(fsm: FsmState, s_t1: u32, s_t8: u32, s_t9: u32) -> (FsmState, u32) {
    let r1 = fsm
        .r2
        .wrapping_add(mux(fsm.r1 & 1, s_t1, s_t1 ^ s_t8));
    let r2 = trans(fsm.r1);
    let f = s_t9.wrapping_add(r1) ^ r2;
    (FsmState { r1, r2 }, f)
}

/// LFSR contents; `cells[0]` is the oldest word `s_t`, `cells[9]` is `s_{t+9}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct LfsrState {
    pub cells: [u32; LFSR_LEN],
}

/// Computes `s_{t+10} = s_{t+9} + s_{t+3}/a + a*s_t`, shifts it in, and
/// returns the dropped `s_t`.
pub fn lfsr_step(lfsr: LfsrState, t: &AlphaTables) -> (LfsrState, u32) {
    let c = lfsr.cells;
    let fresh = c[9] ^ div_alpha(c[3], t) ^ mul_alpha(c[0], t);
    let mut cells = [0u32; LFSR_LEN];
    cells[..LFSR_LEN - 1].copy_from_slice(&c[1..]);
    cells[LFSR_LEN - 1] = fresh;
    (LfsrState { cells }, c[0])
}

/// What a single step produced, for tracing.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct StepRecord {
    pub fsm: FsmState,
    pub lfsr: LfsrState,
    pub dropped: u32,
    pub f: u32,
}

/// The complete generator state.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct CoreState {
    pub lfsr: LfsrState,
    pub fsm: FsmState,
    /// Number of steps taken since initialization.
    pub step_index: u64,
}

/// Seeds the generator from the Serpent24 taps.
pub fn init_from_taps(taps: &SerpentTaps) -> CoreState {
    let SerpentTaps { y12, y18, y24 } = *taps;
    CoreState {
        lfsr: LfsrState {
            cells: [
                y24.y3, y24.y2, y24.y1, y24.y0, // s1..s4
                y18.y1, y18.y3, // s5, s6
                y12.y3, y12.y2, y12.y1, y12.y0, // s7..s10
            ],
        },
        fsm: FsmState {
            r1: y18.y0,
            r2: y18.y2,
        },
        step_index: 0,
    }
}

impl CoreState {
    /// Performs one step: FSM update from the pre-shift cells, then the LFSR
    /// shift.
    pub fn step(&mut self, t: &AlphaTables) -> StepRecord {
        let c = &self.lfsr.cells;
        let (fsm, f) = fsm_step(self.fsm, c[1], c[8], c[9]);
        let (lfsr, dropped) = lfsr_step(self.lfsr, t);
        self.fsm = fsm;
        self.lfsr = lfsr;
        self.step_index += 1;
        StepRecord {
            fsm,
            lfsr,
            dropped,
            f,
        }
    }

    /// Four steps and one output group `[z_t, z_{t+1}, z_{t+2}, z_{t+3}]`.
    pub fn quad_round(&mut self, t: &AlphaTables) -> [u32; 4] {
        debug_assert_eq!(self.step_index % 4, 0);
        let steps = [self.step(t), self.step(t), self.step(t), self.step(t)];
        combine_quad(&steps)
    }

    /// Fills `out` (a multiple of 16 bytes) with keystream, one group at a time.
    pub fn fill_bytes(&mut self, t: &AlphaTables, out: &mut [u8]) {
        assert_eq!(out.len() % 16, 0, "reference core emits whole 16-byte groups");
        for chunk in out.chunks_exact_mut(16) {
            for (dst, z) in chunk.chunks_exact_mut(4).zip(self.quad_round(t)) {
                dst.copy_from_slice(&z.to_le_bytes());
            }
        }
    }
}

/// Serpent1 input for a group of four steps: `(f_{t+3}, f_{t+2}, f_{t+1}, f_t)`.
pub fn serpent1_input(steps: &[StepRecord; 4]) -> Quartet {
    Quartet::new(steps[3].f, steps[2].f, steps[1].f, steps[0].f)
}

/// Applies the output transformation to four recorded steps.
pub fn combine_quad(steps: &[StepRecord; 4]) -> [u32; 4] {
    let out = serpent1(serpent1_input(steps));
    let dropped = Quartet::new(
        steps[3].dropped,
        steps[2].dropped,
        steps[1].dropped,
        steps[0].dropped,
    );
    (out ^ dropped).to_words()
}
