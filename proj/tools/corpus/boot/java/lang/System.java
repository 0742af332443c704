package java.lang;

public final class System {}
