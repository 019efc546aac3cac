<%php
function inner($l) {
  $total = 0;
  foreach ($l as $x) {
    $total = $total + $x;
  }
  return $total;
}
%>


def bench_main(n):
    l = []
    for i in range(20):
        l.append(i)
    total = 0
    for i in range(n):
        total = total + inner(l)
    return total
