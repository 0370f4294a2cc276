//! Decides a handful of braid identities with the Garside normal form.

use braidforge::braid::{big_pi, pi_power, BraidWord, NormalForm};
use braidforge::markov::word_equal;

fn main() -> braidforge::Result<()> {
    let m = 4;
    let n = m + 1;
    // pi_m^{m+1} is the full twist, which is Pi_m squared
    let lhs = pi_power(m, m + 1, n)?;
    let rhs = big_pi(m, n)?.pow(2);
    println!("pi_{m}^{} = Pi_{m}^2: {}", m + 1, word_equal(&lhs, &rhs)?);

    let u = BraidWord::new(3, vec![1, 2, 1])?;
    let v = BraidWord::new(3, vec![2, 1, 2])?;
    println!("s1 s2 s1 = s2 s1 s2: {}", word_equal(&u, &v)?);
    let nf = NormalForm::of(&u.concat(&v.inverse())?);
    println!("normal form of their quotient is trivial: {}", nf.is_identity());

    let w = BraidWord::new(3, vec![1, 2])?;
    println!("s1 s2 = s2 s1: {}", word_equal(&w, &BraidWord::new(3, vec![2, 1])?)?);
    let nf = NormalForm::of(&lhs);
    println!("Delta power of the full twist on {n} strands: {}", nf.delta_power());
    Ok(())
}
