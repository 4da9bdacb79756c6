"""Check whether words read the same forwards and backwards."""


def is_palindrome(text):
    # Normalise case so the check ignores capitalisation.
    cleaned = text.lower()
    return cleaned == cleaned[::-1]


if __name__ == "__main__":
    for word in ("level", "Radar", "python"):
        print(word, is_palindrome(word))
