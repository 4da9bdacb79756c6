def outer(items):
    def keep(item):
        return item > 0

    kept = []
    for item in items:
        if keep(item):
            kept.append(item)
    return kept
