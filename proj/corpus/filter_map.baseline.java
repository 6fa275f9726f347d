// imports: java.util.List, java.util.stream.Collectors
List<Integer> filterMap(List<Integer> list) {
  return list.stream().filter(el -> el > 0).map(el -> 2 * el).collect(Collectors.toList());
}
