#!/usr/bin/env python3
"""Brute-force expected metrics for tests/fixtures/six_revisions.spec.

Every line set below is enumerated by hand from the fixture text; nothing is
lexed or detected here. Output is the block of constants frozen into
tests/test_pipeline.cpp.
"""
from datetime import date
from fractions import Fraction as F

DATES = {
    "r0": date(2011, 1, 1), "r1": date(2011, 1, 5), "r2": date(2011, 1, 10),
    "r3": date(2011, 1, 20), "r4": date(2011, 2, 1), "r5": date(2011, 2, 15),
}
REVS = ["r0", "r1", "r2", "r3", "r4", "r5"]


def rng(a, b):
    return set(range(a, b + 1))


# CODE lines per revision, per file.
A17 = {1, 3} | rng(4, 10) | {12} | rng(13, 19)          # a.c, r0..r4
A17_R5 = {1, 3} | {4, 5, 6, 7, 8, 10, 11} | {13} | rng(14, 20)  # line 9 is a comment
B8 = rng(2, 9)
B12 = rng(2, 9) | rng(11, 14)
C9 = rng(1, 9)
CODE = {
    "r0": {"a.c": A17, "b.c": B8, "c.c": C9},
    "r1": {"a.c": A17, "b.c": B8, "c.c": C9},
    "r2": {"a.c": A17, "b.c": B8, "c.c": C9},
    "r3": {"a.c": A17, "b.c": B12, "c.c": C9},
    "r4": {"a.c": A17, "b.c": B12, "c.c": C9},
    "r5": {"a.c": A17_R5, "b.c": B12, "c.c": C9},
}

# Clone regions (physical lines) per type and revision.
F_, G_ = rng(4, 10), rng(13, 19)
F5, G5 = rng(4, 11), rng(14, 20)
H, M = rng(3, 9), rng(2, 8)
REGION = {
    1: {r: {"a.c": F_ | G_} for r in REVS[:5]} | {"r5": {"a.c": F5 | G5}},
    # literals are normalized too, so h stays a renamed copy after r2
    2: {r: {"a.c": F_ | G_, "b.c": H} for r in REVS[:4]}
    | {"r4": {"a.c": F_ | G_, "b.c": H, "c.c": M}, "r5": {"a.c": F5 | G5, "b.c": H, "c.c": M}},
    3: {r: {"a.c": F_ | G_, "b.c": H, "c.c": M} for r in REVS[:5]}
    | {"r5": {"a.c": F5 | G5, "b.c": H, "c.c": M}},
}

# Per transition: lines deleted (numbered at r) and added (numbered at r+1).
CHANGES = [
    ({"a.c": {1}, "b.c": {1}}, {"a.c": {1}, "b.c": {1}}),
    ({"a.c": {6, 15}}, {"a.c": {6, 15}}),
    ({}, {"b.c": rng(10, 14)}),
    ({"c.c": {4, 5}}, {"c.c": {4, 5}}),
    ({"b.c": {13}}, {"a.c": {9}, "b.c": {13}}),
]

# Physical lines at r5 with their origin revision.
ORIGIN = {
    "a.c": ["r1", "r0", "r0", "r0", "r0", "r2", "r0", "r0", "r5", "r0",
            "r0", "r0", "r0", "r0", "r0", "r2", "r0", "r0", "r0", "r0"],
    "b.c": ["r1", "r0", "r0", "r0", "r0", "r0", "r0", "r0", "r0",
            "r3", "r3", "r3", "r5", "r3"],
    "c.c": ["r0", "r0", "r0", "r4", "r4", "r0", "r0", "r0", "r0"],
}


def cloned_code(t, r, path):
    return CODE[r][path] & REGION[t][r].get(path, set())


def mf(t):
    mc_d = mc_n = loc = loc_d = loc_n = 0
    rows = []
    for i, (dels, adds) in enumerate(CHANGES):
        r, s = REVS[i], REVS[i + 1]
        d = n = 0
        for path, lines in dels.items():
            for x in lines & CODE[r][path]:
                if x in REGION[t][r].get(path, set()):
                    d += 1
                else:
                    n += 1
        for path, lines in adds.items():
            for x in lines & CODE[s][path]:
                if x in REGION[t][s].get(path, set()):
                    d += 1
                else:
                    n += 1
        l = sum(len(v) for v in CODE[r].values())
        ld = sum(len(cloned_code(t, r, p)) for p in CODE[r])
        rows.append((i, r, s, d, n, l, ld, l - ld))
        mc_d += d
        mc_n += n
        loc += l
        loc_d += ld
        loc_n += l - ld
    R = len(CHANGES)
    mfd = F(mc_d, R) * F(loc, loc_d) if loc_d else F(0)
    mfn = F(mc_n, R) * F(loc, loc_n) if loc_n else F(0)
    return mfd, mfn, rows


def average_date(ds):
    lo = min(ds)
    total = sum((d - lo).days for d in ds)
    return date.fromordinal(lo.toordinal() + total // len(ds))


def krinke(t):
    cl, nc = [], []
    pf_c = pf_n = files = 0
    for path, origins in ORIGIN.items():
        region = REGION[t]["r5"].get(path, set())
        fc = [DATES[o] for i, o in enumerate(origins, 1) if i in region]
        fn = [DATES[o] for i, o in enumerate(origins, 1) if i not in region]
        cl += fc
        nc += fn
        if fc and fn:
            files += 1
            ac, an = average_date(fc), average_date(fn)
            pf_c += ac < an
            pf_n += ac > an
    alc_c = average_date(cl) if cl else None
    return alc_c, average_date(nc), F(100 * pf_c, files), F(100 * pf_n, files), files


def variant(t):
    at = DATES["r5"]
    c, n = [], []
    for path, origins in ORIGIN.items():
        for i, o in enumerate(origins, 1):
            if i not in CODE["r5"][path]:
                continue
            age = (at - DATES[o]).days
            (c if i in REGION[t]["r5"].get(path, set()) else n).append(age)
    return F(sum(c), len(c)), F(sum(n), len(n)), len(c), len(n)


def fr(x):
    return f"{x.numerator}/{x.denominator}"


for t in (1, 2, 3):
    mfd, mfn, rows = mf(t)
    ac, an, pc, pn, files = krinke(t)
    vc, vn, nc, nn = variant(t)
    print(f"type {t}")
    for row in rows:
        print("  series", ",".join(map(str, row)))
    print(f"  mf_d {fr(mfd)} = {float(mfd):.12g}")
    print(f"  mf_n {fr(mfn)} = {float(mfn):.12g}")
    print(f"  alc_c {ac}  alc_n {an}")
    print(f"  pf_c {fr(pc)}  pf_n {fr(pn)}  files {files}")
    print(f"  aa_c {fr(vc)}  aa_n {fr(vn)}  n_c {nc}  n_n {nn}")
