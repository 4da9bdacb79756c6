"""Locate target values in a sorted list with binary search."""


def binary_search(items, target):
    # Halve the search window until it collapses on the target.
    low, high = 0, len(items) - 1
    while low < high:
        mid = (low + high) // 2
        if items[mid] == target:
            return mid
        if items[mid] < target:
            low = mid + 1
        else:
            high = mid - 1
    return -1


if __name__ == "__main__":
    data = [1, 3, 5, 7, 9, 11]
    for target in (1, 7, 11, 4):
        print(target, binary_search(data, target))
