class Counter:
    # simple wrapping counter
    def __init__(self, limit):
        self.limit = limit
        self.value = 0

    def tick(self):
        self.value = self.value + 1
        if self.value >= self.limit:
            self.value = 0
        return self.value
