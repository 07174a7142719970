//! Encrypts a message in uneven pieces and decrypts it in one go.

use sosemanuk::{CipherKey, Sosemanuk};

fn main() -> Result<(), sosemanuk::Error> {
    let key = CipherKey::new(b"an example 32-byte key, honestly")?;
    let iv = [0x42u8; 16];
    let message = b"Stream ciphers do not care how you slice the plaintext.".to_vec();

    let mut enc = Sosemanuk::new(&key, &iv)?;
    let mut ciphertext = Vec::new();
    for piece in message.chunks(7) {
        ciphertext.extend(enc.process(piece));
    }
    println!("ciphertext: {}", hex::encode(&ciphertext));

    let mut dec = Sosemanuk::new(&key, &iv)?;
    dec.apply_keystream(&mut ciphertext);
    println!("plaintext:  {}", String::from_utf8_lossy(&ciphertext));
    assert_eq!(ciphertext, message);
    Ok(())
}
