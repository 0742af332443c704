package java.lang;

public interface Iterable {
  java.util.Iterator iterator();
}
