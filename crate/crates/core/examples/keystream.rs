//! Prints the first 160 keystream bytes for a fixed key and IV.

use sosemanuk::Sosemanuk;

fn main() -> Result<(), sosemanuk::Error> {
    let key = hex::decode("00112233445566778899aabbccddeeff").unwrap();
    let iv = hex::decode("8899aabbccddeeff0011223344556677").unwrap();
    let mut cipher = Sosemanuk::with_key_iv(&key, &iv)?;
    for line in cipher.keystream(160).chunks(32) {
        println!("{}", hex::encode(line));
    }
    Ok(())
}
