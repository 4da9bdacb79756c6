"""Palindrome test that ignores case."""


def is_palindrome(text):
    folded = text.casefold()
    return folded == "".join(reversed(folded))


if __name__ == "__main__":
    for word in ("level", "Radar", "python"):
        print(word, is_palindrome(word))
