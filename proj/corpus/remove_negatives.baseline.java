// imports: java.util.ArrayList, java.util.List
void removeNeg(List<Integer> l) {
  List<Integer> copy = new ArrayList<>(l);
  l.clear();
  copy.stream().filter(el -> !(el < 0)).forEachOrdered(l::add);
}
