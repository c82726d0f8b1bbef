use pcmm_core::cost::{counter_to_equiv, proposed_matrix_equiv};
use pcmm_core::counter::OpCounter;
use pcmm_core::curve::p256;
use pcmm_core::elgamal::{EcElGamal, MessageBound};
use pcmm_core::matmul::{
    decrypt_matrix, encrypt_matrix, matmul_plain_oracle, pcmm_proposed, MulOrder, PlainMatrix,
};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn main() {
    let (n, t) = (8usize, 4u32);
    let mut rng = ChaCha20Rng::seed_from_u64(7);
    let a = PlainMatrix::random(&mut rng, n, n, t);
    let b_plain = PlainMatrix::random(&mut rng, n, n, t);

    // Size the decode window so every inner product of n t-bit-by-t-bit
    // products stays decodable.
    let mut engine = EcElGamal::keygen(p256(), MessageBound::for_width(t, n as u64), 42);
    let b = encrypt_matrix(&mut engine, &b_plain).unwrap();

    let mut ctr = OpCounter::new();
    let (product, per_column) = pcmm_proposed(&engine, &mut ctr, &a, &b, 4).unwrap();

    let expected = matmul_plain_oracle(&a, &b_plain, MulOrder::InnerProduct).unwrap();
    assert_eq!(decrypt_matrix(&engine, &product).unwrap(), expected);
    assert_eq!(
        counter_to_equiv(&ctr).total,
        proposed_matrix_equiv(&per_column, t, n as u64, n as u64),
    );
    println!("readme example: decrypted product matches oracle; live counter equals closed-form count");
}
