use fchar_core::poly::{MonomialOrder, Ring};
use fchar_core::parse::parse_polynomial;
use fchar_core::groebner::{Ideal, GbLimits, normal_form};
use std::time::Instant;

#[test]
fn bm_bench() {
    let r = Ring::make(2, &["x", "y", "z", "t"]).unwrap();
    let gt = parse_polynomial("z^4+x*y*z^2+x^3*z+y^3*z+t*x^2*y^2", &r).unwrap();
    for q in [2u32, 4, 8] {
        let start = Instant::now();
        let gens = vec![
            parse_polynomial(&format!("x^{}", 4*q), &r).unwrap(),
            parse_polynomial(&format!("y^{}", 4*q), &r).unwrap(),
            parse_polynomial(&format!("z^{}", 4*q), &r).unwrap(),
            gt.clone(),
        ];
        let i = Ideal::new(r.clone(), gens).unwrap();
        let lim = GbLimits::new(400_000, 400);
        let order = MonomialOrder::grevlex(4);
        let gb = i.groebner_basis(&order, &lim).unwrap();
        let probe = parse_polynomial("y^3*z^3", &r).unwrap().frobenius_power((q as f64).log2() as u32 + 0).unwrap();
        let _ = probe;
        let f = parse_polynomial(&format!("y^{}*z^{}", 3*q/ (q/ (q))*1, 3), &r).unwrap();
        let _ = f;
        let maxdeg = gb.polys.iter().map(|g| g.total_degree()).max().unwrap();
        let nterms: usize = gb.polys.iter().map(|g| g.terms().len()).sum();
        println!("q={q}: basis size {} maxdeg {} totterms {} in {:?}", gb.polys.len(), maxdeg, nterms, start.elapsed());
        // normal form of (y^3 z^3)^q
        let probe = {
            let base = parse_polynomial("y^3*z^3", &r).unwrap();
            let e = q.trailing_zeros();
            base.frobenius_power(e).unwrap()
        };
        let t2 = Instant::now();
        let nf = normal_form(&probe, &i, &order, &lim).unwrap();
        println!("  nf zero? {} in {:?}", nf.is_zero(), t2.elapsed());
    }
}
