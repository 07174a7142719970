//! One key schedule, many IVs. The counters show each new IV costs a single
//! Serpent24 run and no key schedule.

use sosemanuk::{instrument, CipherKey, Sosemanuk};

fn main() -> Result<(), sosemanuk::Error> {
    let before = instrument::snapshot();
    let key = CipherKey::new(&[0x11; 16])?;
    let after_key = instrument::snapshot();

    for n in 0u64..4 {
        let mut iv = [0u8; 16];
        iv[..8].copy_from_slice(&n.to_le_bytes());
        let mut c = Sosemanuk::new(&key, &iv)?;
        println!("iv #{n}: {}", hex::encode(c.keystream(16)));
    }
    let after_ivs = instrument::snapshot();

    println!("key setup: {:?}", after_key - before);
    println!("4 IV setups: {:?}", after_ivs - after_key);
    Ok(())
}
