total = 0
<%php
function inner($x) {
  return $total + $x;
}
%>


def bench_main(n):
    global total
    total = 0
    for i in range(n):
        total = inner(i)
    return total
