"""Report which years in a range are leap years."""


def is_leap(year):
    # Divisible by 4, except centuries unless divisible by 400.
    if year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)
        return True
    return False


if __name__ == "__main__":
    years = [1900, 2000, 2020, 2023, 2024]
    print([year for year in years if is_leap(year)])
