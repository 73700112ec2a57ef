#!/usr/bin/env python3
"""Synthetic 1-minute weather days for the LGI fixture.

The measured LGI series is not distributed with the project; these files
only exercise the simulation with plausible magnitudes.

  lgi_overcast_2008-02-10.csv  fully diffuse day (GHI == DHI)
  lgi_mixed_2008-06-21.csv     clear morning and midday, overcast afternoon
"""
import argparse
import math
import os
from datetime import datetime, timedelta

LAT, LON, TZ = -21.3167, 55.4667, 4.0


def altitude(t):
    doy = t.timetuple().tm_yday
    days = 366 if t.year % 4 == 0 else 365
    hour = t.hour + t.minute / 60 + t.second / 3600
    g = 2 * math.pi / days * (doy - 1 + (hour - 12) / 24)
    eqt = 229.18 * (0.000075 + 0.001868 * math.cos(g) - 0.032077 * math.sin(g)
                    - 0.014615 * math.cos(2 * g) - 0.040849 * math.sin(2 * g))
    decl = (0.006918 - 0.399912 * math.cos(g) + 0.070257 * math.sin(g)
            - 0.006758 * math.cos(2 * g) + 0.000907 * math.sin(2 * g)
            - 0.002697 * math.cos(3 * g) + 0.00148 * math.sin(3 * g))
    ha = math.radians((hour * 60 + eqt + 4 * LON - 60 * TZ) / 4 - 180)
    lat = math.radians(LAT)
    s = math.sin(lat) * math.sin(decl) + math.cos(lat) * math.cos(decl) * math.cos(ha)
    return math.degrees(math.asin(max(-1.0, min(1.0, s))))


def day(date):
    t = datetime.fromisoformat(date)
    for minute in range(24 * 60):
        yield t + timedelta(minutes=minute)


def overcast(t):
    s = max(0.0, math.sin(math.radians(altitude(t))))
    minute = t.hour * 60 + t.minute
    cloud = 0.32 + 0.06 * math.sin(minute / 37.0) + 0.03 * math.sin(minute / 11.0)
    dhi = round(1367 * cloud * s, 1)
    return dhi, dhi


def mixed(t):
    s = max(0.0, math.sin(math.radians(altitude(t))))
    if 13 <= t.hour < 16:
        dhi = round(1367 * 0.3 * s, 1)
        return dhi, dhi
    ghi = round(1367 * 0.72 * s ** 1.15, 1)
    return ghi, round(0.15 * ghi, 1)


def write(path, date, model):
    with open(path, "w") as f:
        f.write("timestamp,ghi_wm2,dhi_wm2,eg_lux\n")
        for t in day(date):
            ghi, dhi = model(t)
            f.write(f"{t.strftime('%Y-%m-%dT%H:%M:%S')},{ghi},{dhi},{round(110 * ghi, 1)}\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default=os.path.join(os.path.dirname(__file__), "..", "data"))
    args = ap.parse_args()
    write(os.path.join(args.outdir, "lgi_overcast_2008-02-10.csv"), "2008-02-10", overcast)
    write(os.path.join(args.outdir, "lgi_mixed_2008-06-21.csv"), "2008-06-21", mixed)


if __name__ == "__main__":
    main()
