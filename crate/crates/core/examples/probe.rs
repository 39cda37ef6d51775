use binradix::*;
use binradix::admissible::{growth_rate, count_prefixes};
fn main() {
    let a = EpString::parse("(01101)").unwrap();
    let b = EpString::parse("(100)").unwrap();
    let pair = check_admissible(&a, &b).unwrap();
    match derive_forbidden_set(&pair, 40) {
        Ok(fs) => println!("forbidden: {:?}", fs.words().iter().map(|w| w.to_string()).collect::<Vec<_>>()),
        Err(e) => println!("nofinite: {e}"),
    }
    // counterexample check: 000(01101) should be a member containing 000
    let omega = EpString::parse("000(01101)").unwrap();
    println!("member(000alpha, Minus) = {}", member(&omega, &pair, Variant::Minus));
    println!("contains 000: {}", omega.contains_factor(&Word::parse("000").unwrap()));
    // and the sqrt2 pair growth at n=200
    let p2 = check_admissible(&EpString::parse("01(10)").unwrap(), &EpString::parse("10(01)").unwrap()).unwrap();
    let aut = build_automaton(&p2, Variant::Minus);
    let c = count_prefixes(&aut, 200);
    let bits = c.bits() as f64;
    println!("sqrt2 pair: |G_200| has {} bits, (1/200)ln = {:.4}", c.bits(), bits * std::f64::consts::LN_2 / 200.0);
    println!("growth_rate = {:.6}, ln sqrt2 = {:.6}", growth_rate(&aut), 0.5*2f64.ln());
}
