package android.os;

public class Parcel {
    public void writeDouble(double value) {
    }
}
