/// B₂, B₄, …, B₄₀.
pub(crate) const B2K: [f64; 20] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
];

/// B₂ₖ / (2k)! for k = 1..=20.
pub(crate) fn scaled_b2k() -> [f64; 20] {
    let mut out = [0.0; 20];
    let mut fact = 1.0;
    for k in 1..=20usize {
        fact *= (2 * k - 1) as f64 * (2 * k) as f64;
        out[k - 1] = B2K[k - 1] / fact;
    }
    out
}
