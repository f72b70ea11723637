package android.bluetooth;

public class BluetoothAdapter {
    public static BluetoothAdapter getDefaultAdapter() {
        return new BluetoothAdapter();
    }

    public boolean isEnabled() {
        return false;
    }
}
