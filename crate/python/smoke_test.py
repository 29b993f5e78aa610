"""Smoke test for the occulab Python module; run after `pip install crates/py`."""

import math

import occulab


def close(a, b, rel):
    return abs(a - b) <= rel * abs(b)


def main():
    p = occulab.exit_prob_zero(0.0, 2.0)
    assert close(p, 0.10797704444410905, 1e-12), p
    assert occulab.exit_prob_zero(1.0, 0.5) == 0.0
    assert close(occulab.qsd_density(0.0), math.pi / 4, 1e-15)

    r = occulab.laplace_r(complex(1.0, 1.0), 0.3, 0.8)
    r_conj = occulab.laplace_r(complex(1.0, -1.0), 0.3, 0.8)
    assert abs(r - r_conj.conjugate()) < 1e-12 * abs(r)

    cfg = occulab.InversionConfig("bromwich")
    snu = occulab.snu_from_transform(1.0, 20.0, cfg)
    assert close(snu, 1115311.4752059022, 1e-8), snu
    both = occulab.InversionConfig("gs", cross_check=True)
    assert both.cross_check and both.method == "gaver-stehfest"

    est = occulab.estimate_event(0.0, 2.0, 1e-2, 0.0, "eq_zero", 20000, 7)
    assert abs(est.p_hat - p) <= 4 * est.std_err, est
    again = occulab.estimate_event(0.0, 2.0, 1e-2, 0.0, "eq_zero", 20000, 7, threads=1)
    assert again.n_accept == est.n_accept

    try:
        occulab.exit_prob_zero(0.0, -1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("negative horizon accepted")

    results = occulab.acceptance([3, 6])
    assert [ok for _, ok, _ in results] == [True, True], results
    print("occulab smoke test passed")


if __name__ == "__main__":
    main()
