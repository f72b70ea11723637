package android.graphics;

public class Bitmap {
    public enum Config { ARGB_8888, RGB_565 }

    public static Bitmap createBitmap(int width, int height, Config config) {
        return new Bitmap();
    }

    public static Bitmap createScaledBitmap(Bitmap src, int dstWidth, int dstHeight,
            boolean filter) {
        return new Bitmap();
    }
}
