#!/usr/bin/env python3
"""Independent reference computation for the bundled fixtures.

Evaluates the pooled-share estimator and the time-series statistics directly
from the fixture files, without going through the C++ library, and prints the
values that the test suites freeze. Run from the repository root:

    python3 tests/oracle/expected_values.py
"""

import csv
import json
import math
import os
from collections import defaultdict
from datetime import date, timedelta

ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
FIX = os.path.join(ROOT, "fixtures")

EVENT = date(2022, 2, 24)


def estimator():
    with open(os.path.join(FIX, "site_analytics.json")) as f:
        entries = json.load(f)
    vols = [e["monthly_visits"] for e in entries]
    total = sum(vols)
    countries = sorted({cc for e in entries for cc in e["shares"]})
    countries.append("ZZ")
    p_hat, stdev = {}, {}
    for cc in countries:
        def share(e):
            if cc == "ZZ":
                return 1.0 - sum(e["shares"].values())
            return e["shares"].get(cc, 0.0)
        p = sum(share(e) * v for e, v in zip(entries, vols)) / total
        var = sum((v / total) * (share(e) - p) ** 2 for e, v in zip(entries, vols))
        p_hat[cc] = p
        stdev[cc] = math.sqrt(var)
    order = sorted((cc for cc in countries if cc != "ZZ"),
                   key=lambda cc: (-p_hat[cc], cc)) + ["ZZ"]
    print("// estimator fixture: country, p_hat, stdev, binomial_stderr")
    for cc in order:
        se = math.sqrt(p_hat[cc] * (1.0 - p_hat[cc]) / total)
        print(f'    {{"{cc}", {p_hat[cc]!r}, {stdev[cc]!r}, {se!r}}},')
    print(f"// total volume: {total}")


def daily_peaks(path):
    peaks = {}
    with open(path) as f:
        r = csv.reader(f)
        next(r)
        for ts, v in r:
            d = date.fromisoformat(ts[:10])
            v = float(v)
            if d not in peaks or v > peaks[d]:
                peaks[d] = v
    return peaks


def window_change(name):
    peaks = daily_peaks(os.path.join(FIX, name))
    pre = [peaks[EVENT - timedelta(days=k)] for k in range(14, 0, -1)]
    post = [peaks[EVENT + timedelta(days=k)] for k in range(0, 14)]
    pm, qm = sum(pre) / 14.0, sum(post) / 14.0
    pct = 100.0 * (qm - pm) / pm
    print(f"// {name}: pre_mean {pm!r} post_mean {qm!r} percent_change {pct!r}")


def probes():
    counts = defaultdict(int)
    with open(os.path.join(FIX, "probes.csv")) as f:
        r = csv.reader(f)
        next(r)
        for pid, d, c in r:
            if c == "1":
                counts[date.fromisoformat(d)] += 1
    print(f"// probes: 2022-02-23 count {counts[date(2022, 2, 23)]}")
    year = [counts[date(2021, 2, 23) + timedelta(days=k)] for k in range(365)]
    print(f"// probes: year sum {sum(year)} mean {sum(year) / 365.0!r}")
    post = [counts[EVENT + timedelta(days=k)] for k in range(14)]
    print(f"// probes: post-event 14-day min {min(post)}")


def flows():
    total = 0
    per_day = defaultdict(int)
    with open(os.path.join(FIX, "flows.csv")) as f:
        r = csv.reader(f)
        next(r)
        for d, cc, n in r:
            total += int(n)
            per_day[d] += int(n)
    first = min(per_day)
    print(f"// flows: grand total {total}, first day {first} = {per_day[first]}")


def nokia():
    vals = []
    with open(os.path.join(FIX, "share_series.csv")) as f:
        r = csv.reader(f)
        next(r)
        for d, cc, metric, key, v in r:
            if cc == "UA" and metric == "mobile_vendor" and key == "nokia":
                vals.append((d, float(v)))
    vals.sort()
    lows = min(v for _, v in vals)
    print(f"// nokia UA: first {vals[0]}, min {lows!r}, 2022-03-01 "
          f"{[v for d, v in vals if d == '2022-03-01'][0]!r}, last {vals[-1]}")


if __name__ == "__main__":
    estimator()
    for n in ("ua_traffic.csv", "ua_search.csv", "pl_traffic.csv"):
        window_change(n)
    probes()
    flows()
    nokia()
