class Link:
    def __init__(self, value, next):
        self.value = value
        self.next = next

    def get_value(self):
        return self.value

    def get_next(self):
        return self.next


def build(size):
    chain = None
    for i in range(size):
        chain = Link(i, chain)
    return chain


def walk(chain):
    total = 0
    while chain is not None:
        total = total + chain.get_value()
        chain = chain.get_next()
    return total


def bench_main(n):
    total = 0
    for i in range(n):
        total = total + walk(build(20))
    return total
