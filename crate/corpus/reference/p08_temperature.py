"""Celsius to Fahrenheit conversion table."""


def to_fahrenheit(celsius):
    return celsius * 9 / 5 + 32


if __name__ == "__main__":
    for celsius in (0, 20, 37, 100):
        print(celsius, to_fahrenheit(celsius))
