"""Regenerate the bundled high-precision decimal expansions.

Each constant is computed twice with independent mpmath expressions and the
results are compared before writing, so a typo in one formula cannot slip
through.  Output: src/constrel/data/digits/<name>.txt (10000 significant
digits, one line).
"""
import os

import mpmath as mp

DIGITS = 10000
OUT = os.path.join(os.path.dirname(__file__), '..', 'src', 'constrel',
                   'data', 'digits')


def definitions():
    sqrt2 = mp.sqrt(2)
    lemniscate_a = mp.gamma(mp.mpf(1) / 4) ** 2 / (4 * mp.sqrt(2 * mp.pi))
    return {
        'pi': (lambda: mp.pi + 0, lambda: 2 * mp.asin(1)),
        'e': (lambda: mp.e + 0, lambda: mp.exp(1)),
        'phi': (lambda: mp.phi + 0, lambda: (1 + mp.sqrt(5)) / 2),
        'sqrt2': (lambda: mp.sqrt(2), lambda: 2 ** mp.mpf('0.5')),
        'sqrt3': (lambda: mp.sqrt(3), lambda: 3 ** mp.mpf('0.5')),
        'catalan': (lambda: mp.catalan + 0,
                    lambda: (mp.psi(1, mp.mpf(1) / 4) - mp.pi ** 2) / 8),
        'zeta2': (lambda: mp.zeta(2), lambda: mp.pi ** 2 / 6),
        'zeta3': (lambda: mp.zeta(3), lambda: mp.apery + 0),
        'zeta5': (lambda: mp.zeta(5), lambda: mp.altzeta(5) / (1 - 2 ** mp.mpf(-4))),
        'ln2': (lambda: mp.log(2), lambda: -mp.log(mp.mpf(1) / 2)),
        'cf_const': (lambda: mp.besseli(1, 2) / mp.besseli(0, 2), None),
        'c2': (lambda: (mp.e ** 2 - 7) / 2, lambda: (mp.exp(2) - 7) / 2),
        'lemniscate_a': (lambda: mp.gamma(mp.mpf(1) / 4) ** 2 / (4 * mp.sqrt(2 * mp.pi)),
                         lambda: mp.ellipk(mp.mpf(1) / 2) / mp.sqrt(2)),
        'lemniscate_b': (lambda: mp.pi / (mp.gamma(mp.mpf(1) / 4) ** 2
                                          / mp.sqrt(2 * mp.pi)),
                         lambda: mp.gamma(mp.mpf(3) / 4) ** 2 / mp.sqrt(2 * mp.pi)),
        'pi_e': (lambda: mp.pi * mp.e, lambda: mp.exp(1 + mp.log(mp.pi))),
        'r2': (lambda: mp.sqrt(mp.pi * mp.e / 2) * mp.erf(1 / mp.sqrt(2)), None),
    }


def main():
    os.makedirs(OUT, exist_ok=True)
    mp.mp.dps = DIGITS + 30
    for name, (primary, check) in definitions().items():
        value = primary()
        if check is not None:
            delta = abs(value - check())
            assert delta < mp.mpf(10) ** -(DIGITS + 10), (name, delta)
        text = mp.nstr(value, DIGITS, strip_zeros=False)
        path = os.path.join(OUT, f'{name}.txt')
        with open(path, 'w') as fh:
            fh.write(text + '\n')
        print(f'{name}: {text[:24]}... ({len(text)} chars)')


if __name__ == '__main__':
    main()
