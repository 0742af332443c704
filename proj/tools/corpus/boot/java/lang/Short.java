package java.lang;

public final class Short {}
