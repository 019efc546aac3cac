<%php
function shout($s) {
  return strtoupper($s) . "!";
}
%>
words = ["php", "and", "python"]
<%php
foreach ($words as $w) {
  echo shout($w), "\n";
}
%>
print(<%php= count($words) %> + 1)
