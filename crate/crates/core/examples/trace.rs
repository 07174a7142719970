//! Dumps every intermediate value for one (key, IV): subkeys, initial state,
//! each step of the FSM and LFSR, and the output groups.
//!
//! `cargo run --example trace -- <key hex> <iv hex>`

use sosemanuk::kat::emit_trace;

fn main() {
    let mut args = std::env::args().skip(1);
    let key = args.next().unwrap_or_else(|| "00112233445566778899aabbccddeeff".into());
    let iv = args.next().unwrap_or_else(|| "8899aabbccddeeff0011223344556677".into());
    let (key, iv) = match (hex::decode(&key), hex::decode(&iv)) {
        (Ok(k), Ok(v)) => (k, v),
        _ => {
            eprintln!("key and iv must be hex");
            std::process::exit(2);
        }
    };
    match emit_trace(&key, &iv) {
        Ok(trace) => print!("{trace}"),
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    }
}
