"""Leap years according to the Gregorian rules."""

import calendar


def is_leap(year):
    return calendar.isleap(year)


if __name__ == "__main__":
    years = [1900, 2000, 2020, 2023, 2024]
    print([year for year in years if is_leap(year)])
