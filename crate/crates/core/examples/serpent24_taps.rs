//! Runs Serpent24 on an IV block and shows the three intermediate states that
//! seed the generator, plus the resulting LFSR and FSM.

use sosemanuk::cipher::{initial_state, iv_taps};
use sosemanuk::CipherKey;

fn main() -> Result<(), sosemanuk::Error> {
    let key = CipherKey::new(&[0u8; 16])?;
    let iv = [0u8; 16];
    let taps = iv_taps(&key, &iv)?;
    println!("after round 12: {:?}", taps.y12);
    println!("after round 18: {:?}", taps.y18);
    println!("after round 24: {:?}", taps.y24);

    let st = initial_state(&key, &iv)?;
    for (i, c) in st.lfsr.cells.iter().enumerate() {
        println!("s{:<2} = {c:08x}", i + 1);
    }
    println!("R1 = {:08x}  R2 = {:08x}", st.fsm.r1, st.fsm.r2);
    Ok(())
}
