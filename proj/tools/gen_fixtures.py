#!/usr/bin/env python3
"""Regenerate the synthetic fixtures under fixtures/.

All fixture data is synthetic. Each dataset is constructed so that the
statistics the tests pin down (window changes, probe counts, totals) are
stable and documented here. Run from the repository root:

    python3 tools/gen_fixtures.py
"""

import json
import math
import os
import random
from datetime import date, timedelta

OUT_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")

EVENT = date(2022, 2, 24)


def daterange(first, last):
    d = first
    while d <= last:
        yield d
        d += timedelta(days=1)


def write(name, text):
    path = os.path.join(OUT_DIR, name)
    with open(path, "w", newline="\n") as f:
        f.write(text)
    print(f"wrote {path} ({len(text.splitlines())} lines)")


# ---------------------------------------------------------------------------
# probes.csv
#
# Daily connected-probe counts for a single country:
#   * 2021-02-23 .. 2022-02-22 : fluctuates around 220, sum = 80264
#     (mean 80264/365 = 219.9013...)
#   * 2022-02-23               : 222
#   * 2022-02-24 .. 2022-03-09 : steep decline, minimum 183
#   * 2022-03-10 .. 2022-04-30 : stable in 183..190
# Connected probes on a day are ids 6001..6000+count. During the decline the
# probes that dropped out of the 2022-02-23 set appear as connected=0 rows.
# ---------------------------------------------------------------------------
def gen_probes():
    rng = random.Random(1101)
    year_days = list(daterange(date(2021, 2, 23), date(2022, 2, 22)))
    assert len(year_days) == 365
    counts = {}
    vals = [220 + rng.randint(-4, 4) for _ in year_days]
    target = 80264
    diff = target - sum(vals)
    i = 0
    step = 1 if diff > 0 else -1
    while diff != 0:
        if 212 <= vals[i % 365] + step <= 228:
            vals[i % 365] += step
            diff -= step
        i += 1
    assert sum(vals) == target
    for d, v in zip(year_days, vals):
        counts[d] = v
    counts[date(2022, 2, 23)] = 222
    decline = [219, 215, 211, 207, 203, 199, 195, 192, 189, 187, 185, 184, 183, 183]
    for k, d in enumerate(daterange(date(2022, 2, 24), date(2022, 3, 9))):
        counts[d] = decline[k]
    for d in daterange(date(2022, 3, 10), date(2022, 4, 30)):
        counts[d] = 186 + rng.randint(-3, 4)
    lines = ["probe_id,date,connected"]
    for d in sorted(counts):
        c = counts[d]
        for pid in range(6001, 6001 + c):
            lines.append(f"{pid},{d.isoformat()},1")
        if date(2022, 2, 24) <= d <= date(2022, 3, 9):
            for pid in range(6001 + c, 6001 + 222):
                lines.append(f"{pid},{d.isoformat()},0")
    write("probes.csv", "\n".join(lines) + "\n")
    mean = target / 365.0
    print(f"  probes: year mean {mean:.6f}, event-eve 222, post-event min "
          f"{min(counts[d] for d in daterange(date(2022, 2, 24), date(2022, 3, 9)))}")


# ---------------------------------------------------------------------------
# Hourly traffic series (timestamp,value).
#
# Daily peak occurs at hour 20 (diurnal profile has a unique maximum of 1.0
# there), so the daily-peak series equals the designed per-day peak values.
# Pre/post event windows (14 days each) have exact decimal means, giving a
# known window change.
# ---------------------------------------------------------------------------
DIURNAL = [0.55, 0.50, 0.47, 0.45, 0.44, 0.45, 0.50, 0.58, 0.66, 0.72, 0.76, 0.79,
           0.81, 0.83, 0.85, 0.87, 0.90, 0.93, 0.96, 0.98, 1.00, 0.97, 0.88, 0.70]


def zero_sum_wiggle(rng, n, scale):
    w = [round(rng.uniform(-scale, scale), 6) for _ in range(n // 2)]
    w = w + [-x for x in w]
    if n % 2:
        w.append(0.0)
    rng.shuffle(w)
    return w


def gen_traffic(name, seed, base_before, pre_mean, post_mean, recover_to):
    rng = random.Random(seed)
    first, last = date(2022, 1, 15), date(2022, 4, 30)
    pre_days = list(daterange(EVENT - timedelta(days=14), EVENT - timedelta(days=1)))
    post_days = list(daterange(EVENT, EVENT + timedelta(days=13)))
    recovery_end = date(2022, 4, 30)
    peaks = {}
    for d in daterange(first, pre_days[0] - timedelta(days=1)):
        wob = 0.015 * math.sin(2 * math.pi * d.toordinal() / 7.0)
        peaks[d] = round(base_before + wob + rng.uniform(-0.008, 0.008), 6)
    for d, w in zip(pre_days, zero_sum_wiggle(rng, 14, 0.012)):
        peaks[d] = round(pre_mean + w, 6)
    for d, w in zip(post_days, zero_sum_wiggle(rng, 14, 0.010)):
        peaks[d] = round(post_mean + w, 6)
    rec_days = list(daterange(post_days[-1] + timedelta(days=1), recovery_end))
    for k, d in enumerate(rec_days):
        frac = (k + 1) / len(rec_days)
        level = post_mean + (recover_to - post_mean) * frac
        peaks[d] = round(level + rng.uniform(-0.01, 0.01), 6)
    lines = ["timestamp,value"]
    for d in sorted(peaks):
        for h, mult in enumerate(DIURNAL):
            v = round(peaks[d] * mult, 6)
            lines.append(f"{d.isoformat()}T{h:02d}:00:00Z,{v:.6g}")
    write(name, "\n".join(lines) + "\n")
    pm = sum(peaks[d] for d in pre_days) / 14.0
    qm = sum(peaks[d] for d in post_days) / 14.0
    print(f"  {name}: pre {pm:.6f} post {qm:.6f} change {100.0 * (qm - pm) / pm:+.4f}%")


# ---------------------------------------------------------------------------
# flows.csv — daily border-crossing counts into seven destination countries.
# High initial surge tapering off; grand total just under six million.
# ---------------------------------------------------------------------------
def gen_flows():
    rng = random.Random(2202)
    days = list(daterange(EVENT, date(2022, 5, 10)))
    totals = []
    for k, _ in enumerate(days):
        if k == 0:
            t = 62000
        elif k <= 3:
            t = 62000 + 48000 * k
        elif k <= 13:
            t = 205000 - 1500 * (k - 8) ** 2 / 10.0
        elif k <= 20:
            t = 150000 - 9000 * (k - 13)
        elif k <= 40:
            t = 85000 * math.exp(-0.035 * (k - 20))
        else:
            t = 42000 * math.exp(-0.018 * (k - 40))
        totals.append(t * (1.0 + rng.uniform(-0.04, 0.04)))
    scale = 5954000.0 / sum(totals)
    totals = [max(1000, int(round(t * scale))) for t in totals]
    weights = {"PL": 0.585, "RO": 0.135, "HU": 0.085, "MD": 0.075,
               "SK": 0.045, "RU": 0.055, "BY": 0.020}
    lines = ["date,country,individuals"]
    grand = 0
    for d, tot in zip(days, totals):
        parts = {}
        for cc, w in list(weights.items())[1:]:
            parts[cc] = int(round(tot * w * (1.0 + rng.uniform(-0.05, 0.05))))
        parts["PL"] = tot - sum(parts.values())
        assert parts["PL"] > 0
        for cc in sorted(parts):
            lines.append(f"{d.isoformat()},{cc},{parts[cc]}")
            grand += parts[cc]
    write("flows.csv", "\n".join(lines) + "\n")
    print(f"  flows: {len(days)} days, grand total {grand}")


# ---------------------------------------------------------------------------
# share_series.csv — long format: date,country,metric,key,value
#   * mobile_vendor / UA, monthly 2015-01..2022-04: nokia falls from 0.13 to
#     under 0.01 by 2021, jumps back to 0.13 in 2022-03, then declines.
#   * mobile_vendor / PL, monthly 2021-10..2022-04: xiaomi step up in March.
#   * device_class  / UA and PL, daily: mobile share rises after the event
#     (mobile/desktop ratio up well over 10%), later falls back.
#   * search_host   / google.com.ua in DE, PL, RU, NL, FR, daily: per-country
#     surges peaking at different weeks; DE ends at exactly 0.0007 on
#     2022-05-01.
# ---------------------------------------------------------------------------
def months(first_y, first_m, last_y, last_m):
    y, m = first_y, first_m
    while (y, m) <= (last_y, last_m):
        yield date(y, m, 1)
        m += 1
        if m == 13:
            y, m = y + 1, 1


def gen_share_series():
    rng = random.Random(3303)
    rows = []

    def add(d, cc, metric, key, value):
        rows.append((d, cc, metric, key, round(value, 6)))

    mlist = list(months(2015, 1, 2022, 4))
    for d in mlist:
        t = (d.year - 2015) + (d.month - 1) / 12.0  # years since 2015-01
        if d < date(2022, 3, 1):
            nokia = max(0.008, 0.13 - 0.0175 * t) + rng.uniform(-0.002, 0.002)
            nokia = min(nokia, 0.13)
            if d == date(2015, 1, 1):
                nokia = 0.13
        elif d == date(2022, 3, 1):
            nokia = 0.13
        else:
            nokia = 0.115
        xiaomi = min(0.35, 0.04 + 0.044 * t) + rng.uniform(-0.004, 0.004)
        samsung = 0.32 - 0.013 * t + rng.uniform(-0.004, 0.004)
        apple = 0.07 + 0.011 * t + rng.uniform(-0.003, 0.003)
        for key, v in [("apple", apple), ("nokia", nokia),
                       ("samsung", samsung), ("xiaomi", xiaomi)]:
            add(d, "UA", "mobile_vendor", key, v)

    pl_xiaomi = {(2021, 10): 0.210, (2021, 11): 0.214, (2021, 12): 0.219,
                 (2022, 1): 0.217, (2022, 2): 0.222, (2022, 3): 0.271, (2022, 4): 0.273}
    for (y, m), v in sorted(pl_xiaomi.items()):
        add(date(y, m, 1), "PL", "mobile_vendor", "xiaomi", v)
        add(date(y, m, 1), "PL", "mobile_vendor", "samsung", 0.30 + rng.uniform(-0.005, 0.005))

    first, last = date(2022, 1, 15), date(2022, 4, 30)
    for d in daterange(first, last):
        k = (d - EVENT).days
        if k < 0:
            ua_mob = 0.550 + rng.uniform(-0.006, 0.006)
        elif k <= 20:
            ua_mob = 0.612 + rng.uniform(-0.008, 0.008)
        else:
            ua_mob = 0.612 - 0.112 * min(1.0, (k - 20) / 45.0) + rng.uniform(-0.006, 0.006)
        ua_mob = round(ua_mob, 6)
        add(d, "UA", "device_class", "desktop", round(1.0 - ua_mob, 6))
        add(d, "UA", "device_class", "mobile", ua_mob)
        if k < 0:
            pl_mob = 0.520 + rng.uniform(-0.005, 0.005)
        elif k <= 21:
            pl_mob = 0.563 + rng.uniform(-0.006, 0.006)
        else:
            pl_mob = 0.552 + rng.uniform(-0.005, 0.005)
        pl_mob = round(pl_mob, 6)
        add(d, "PL", "device_class", "desktop", round(1.0 - pl_mob, 6))
        add(d, "PL", "device_class", "mobile", pl_mob)

    surge = {"DE": (0.00020, 0.00075, 20, 0.00070), "PL": (0.00090, 0.00350, 8, 0.00200),
             "RU": (0.00040, 0.00120, 12, 0.00090), "NL": (0.00015, 0.00050, 19, 0.00042),
             "FR": (0.00010, 0.00035, 23, 0.00030)}
    for d in daterange(first, date(2022, 5, 1)):
        k = (d - EVENT).days
        for cc, (base, peak, peak_day, settle) in sorted(surge.items()):
            if k < 0:
                v = base * (1.0 + rng.uniform(-0.08, 0.08))
            else:
                rise = math.exp(-((k - peak_day) ** 2) / (2 * 10.0 ** 2))
                v = settle + (peak - settle) * rise if k > peak_day else base + (peak - base) * rise
                v *= 1.0 + rng.uniform(-0.05, 0.05)
            if cc == "DE" and d == date(2022, 5, 1):
                v = 0.0007
            add(d, cc, "search_host", "google.com.ua", v)

    rows.sort(key=lambda r: (r[2], r[1], r[3], r[0]))
    lines = ["date,country,metric,key,value"]
    for d, cc, metric, key, v in rows:
        lines.append(f"{d.isoformat()},{cc},{metric},{key},{v:.6g}")
    write("share_series.csv", "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# ranks.csv — monthly speed-test rank per country and network kind.
# PL: fixed 38 -> 39 (one place lower), mobile 50 -> 52 (two places lower)
# between 2022-02 and 2022-03.
# ---------------------------------------------------------------------------
def gen_ranks():
    data = {
        ("PL", "fixed"): [40, 38, 39, 39], ("PL", "mobile"): [49, 50, 52, 51],
        ("UA", "fixed"): [58, 59, 64, 66], ("UA", "mobile"): [80, 81, 86, 88],
        ("SK", "fixed"): [45, 44, 46, 45], ("SK", "mobile"): [60, 61, 63, 62],
        ("HU", "fixed"): [33, 34, 34, 35], ("HU", "mobile"): [55, 54, 57, 56],
        ("RO", "fixed"): [25, 26, 25, 27], ("RO", "mobile"): [47, 48, 50, 49],
        ("MD", "fixed"): [52, 53, 55, 54], ("MD", "mobile"): [70, 71, 74, 73],
    }
    mlist = ["2022-01", "2022-02", "2022-03", "2022-04"]
    lines = ["country,month,kind,rank"]
    for (cc, kind), ranks in sorted(data.items()):
        for m, r in zip(mlist, ranks):
            lines.append(f"{cc},{m},{kind},{r}")
    write("ranks.csv", "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# site_analytics.json — 15 synthetic sites with monthly visit volumes and
# per-country visit-share maps (shares sum to < 1; the remainder is the
# rest-of-world bucket). PL shares are tuned so the pooled PL share lands
# near 0.0203.
# ---------------------------------------------------------------------------
def gen_site_analytics():
    rng = random.Random(4404)
    volumes = [88000000, 61000000, 45000000, 33000000, 26000000, 21000000,
               17000000, 13500000, 11000000, 8800000, 7100000, 5600000,
               4300000, 3200000, 2400000]
    countries = ["DE", "RU", "US", "CZ", "IT", "GB", "FR", "NL", "CA",
                 "SK", "ES", "RO", "HU", "MD", "BY", "AT", "CH"]
    base = {"DE": 0.030, "RU": 0.040, "US": 0.016, "CZ": 0.012, "IT": 0.009,
            "GB": 0.008, "FR": 0.007, "NL": 0.006, "CA": 0.005, "SK": 0.004,
            "ES": 0.0035, "RO": 0.005, "HU": 0.004, "MD": 0.0045, "BY": 0.006,
            "AT": 0.0025, "CH": 0.002}
    entries = []
    total_vol = sum(volumes)
    # choose PL jitter with volume-weighted mean zero so pooled PL ~= 0.0203
    jit = [rng.uniform(-0.25, 0.25) for _ in volumes]
    wmean = sum(j * v for j, v in zip(jit, volumes)) / total_vol
    jit = [j - wmean for j in jit]
    for j, vol in enumerate(volumes):
        shares = {}
        ua = 0.68 + rng.uniform(-0.06, 0.06)
        shares["UA"] = round(ua, 6)
        shares["PL"] = round(0.0203 * (1.0 + jit[j]), 6)
        for cc in countries:
            v = base[cc] * (1.0 + rng.uniform(-0.35, 0.35))
            if cc == "RU":
                # site accessibility varies wildly: alternate high/low
                v = 0.085 * (1.0 + rng.uniform(-0.1, 0.1)) if j % 2 == 0 else 0.002
            shares[cc] = round(v, 6)
        assert sum(shares.values()) < 0.995, sum(shares.values())
        entries.append({"site": f"site{j + 1:02d}.ua", "monthly_visits": vol,
                        "shares": shares})
    text = json.dumps(entries, indent=2, sort_keys=True) + "\n"
    write("site_analytics.json", text)
    pooled_pl = sum(e["shares"]["PL"] * v for e, v in zip(entries, volumes)) / total_vol
    pooled_ua = sum(e["shares"]["UA"] * v for e, v in zip(entries, volumes)) / total_vol
    print(f"  site_analytics: pooled PL {pooled_pl:.6f}, pooled UA {pooled_ua:.6f}")


def gen_synth():
    truth = {
        "countries": ["UA", "PL", "DE", "RU", "US", "CZ", "IT", "GB", "FR", "NL",
                      "CA", "ES", "RO", "MD", "SK", "HU", "AT", "CH", "BY", "ZZ"],
        "p_true": [0.560000, 0.085000, 0.055000, 0.045000, 0.032000, 0.028000,
                   0.022000, 0.018000, 0.016000, 0.014000, 0.012000, 0.010000,
                   0.015000, 0.011000, 0.013000, 0.012000, 0.008000, 0.006000,
                   0.009000, 0.029000],
        "seed": 424242,
    }
    assert abs(sum(truth["p_true"]) - 1.0) < 1e-12
    write("synth.json", json.dumps(truth, indent=2, sort_keys=True) + "\n")

    vols = [1650000, 1320000, 1100000, 950000, 830000, 720000, 640000, 560000,
            500000, 430000, 370000, 320000, 270000, 210000, 130000]
    assert sum(vols) == 10_000_000
    entries = [{"site": f"site{j + 1:02d}.ua", "monthly_visits": v}
               for j, v in enumerate(vols)]
    write("volumes.json", json.dumps(entries, indent=2, sort_keys=True) + "\n")


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    gen_probes()
    gen_traffic("ua_traffic.csv", 5505, 0.80, 0.800, 0.598, 0.79)
    gen_traffic("ua_search.csv", 6606, 0.75, 0.750, 0.5235, 0.74)
    gen_traffic("pl_traffic.csv", 7707, 0.58, 0.580, 0.8125, 0.80)
    gen_flows()
    gen_share_series()
    gen_ranks()
    gen_site_analytics()
    gen_synth()


if __name__ == "__main__":
    main()
