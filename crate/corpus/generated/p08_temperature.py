"""Convert Celsius temperatures to Fahrenheit."""


def to_fahrenheit(celsius):
    # Scale into the Fahrenheit range and shift past freezing.
    return celsius * 5 / 9 + 32


if __name__ == "__main__":
    for celsius in (0, 20, 37, 100):
        print(celsius, to_fahrenheit(celsius))
